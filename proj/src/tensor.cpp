#include "cpool/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cpool {

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw CapacityError("size product " + std::to_string(a) + " * " + std::to_string(b) +
                        " overflows the index type");
  }
  return a * b;
}

std::size_t checked_volume(std::span<const std::size_t> dims) {
  std::size_t volume = 1;
  for (std::size_t d : dims) volume = checked_mul(volume, d);
  return volume;
}

DenseTensor outer_product(const DenseTensor& a, const DenseTensor& b) {
  Shape dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  checked_volume(dims);

  DenseTensor result(std::move(dims));
  auto out = result.values();
  const auto av = a.values();
  const auto bv = b.values();
  std::size_t k = 0;
  for (double ai : av) {
    for (double bj : bv) out[k++] = ai * bj;
  }
  return result;
}

double inner_product(const DenseTensor& a, const DenseTensor& b) {
  if (a.dims() != b.dims()) throw DimensionError("inner_product: dims differ");
  double sum = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) sum += av[i] * bv[i];
  return sum;
}

DenseTensor pad_with_ones(std::span<const double> x, std::size_t pad_len) {
  if (pad_len == 0) throw ContractError("pad_with_ones: pad length must be positive");
  std::vector<double> values(x.begin(), x.end());
  values.resize(x.size() + pad_len, 1.0);
  return DenseTensor::vector(std::move(values));
}

DenseTensor pad_with_ones(const DenseTensor& x, std::size_t pad_len) {
  if (x.order() != 1) throw DimensionError("pad_with_ones: input must be order 1");
  return pad_with_ones(x.values(), pad_len);
}

DenseTensor flatten(const DenseTensor& t) {
  return DenseTensor(Shape{t.size()}, std::vector<double>(t.values().begin(), t.values().end()));
}

namespace {

template <typename T>
double max_abs_diff_impl(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.dims() != b.dims()) throw DimensionError("max_abs_diff: dims differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

template <typename T>
double frobenius_impl(const Tensor<T>& t) {
  double sum = 0.0;
  for (const T& v : t.values()) sum += std::norm(v);
  return std::sqrt(sum);
}

}  // namespace

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) { return max_abs_diff_impl(a, b); }
double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) { return max_abs_diff_impl(a, b); }
double frobenius_norm(const DenseTensor& t) { return frobenius_impl(t); }
double frobenius_norm(const ComplexTensor& t) { return frobenius_impl(t); }

ComplexTensor to_complex(const DenseTensor& t) {
  std::vector<std::complex<double>> values(t.values().begin(), t.values().end());
  return ComplexTensor(t.dims(), std::move(values));
}

std::vector<Block> subdivide(const DenseTensor& t, const std::array<std::size_t, 3>& block_dims) {
  if (t.order() != 3) throw DimensionError("subdivide: tensor must be order 3");
  std::array<std::size_t, 3> grid{};
  for (std::size_t m = 0; m < 3; ++m) {
    if (block_dims[m] == 0 || t.dim(m) % block_dims[m] != 0) {
      throw DimensionError("subdivide: block dim " + std::to_string(block_dims[m]) +
                           " does not divide tensor dim " + std::to_string(t.dim(m)) + " in mode " +
                           std::to_string(m));
    }
    grid[m] = t.dim(m) / block_dims[m];
  }

  const auto [bc, bh, bw] = block_dims;
  const std::size_t rows = t.dim(1);
  const std::size_t cols = t.dim(2);
  const auto src = t.values();

  std::vector<Block> blocks;
  blocks.reserve(grid[0] * grid[1] * grid[2]);
  for (std::size_t gc = 0; gc < grid[0]; ++gc) {
    for (std::size_t gh = 0; gh < grid[1]; ++gh) {
      for (std::size_t gw = 0; gw < grid[2]; ++gw) {
        DenseTensor block(Shape{bc, bh, bw});
        auto dst = block.values();
        std::size_t k = 0;
        for (std::size_t c = 0; c < bc; ++c) {
          for (std::size_t h = 0; h < bh; ++h) {
            const std::size_t row = ((gc * bc + c) * rows + gh * bh + h) * cols + gw * bw;
            for (std::size_t w = 0; w < bw; ++w) dst[k++] = src[row + w];
          }
        }
        blocks.push_back({{gc, gh, gw}, std::move(block)});
      }
    }
  }
  return blocks;
}

DenseTensor reassemble(std::span<const Block> blocks, const Shape& dims) {
  if (dims.size() != 3) throw DimensionError("reassemble: target must be order 3");
  DenseTensor result(dims);
  auto dst = result.values();
  std::size_t covered = 0;
  for (const Block& block : blocks) {
    const auto& bd = block.data.dims();
    if (bd.size() != 3) throw DimensionError("reassemble: block must be order 3");
    for (std::size_t m = 0; m < 3; ++m) {
      if ((block.grid[m] + 1) * bd[m] > dims[m]) {
        throw DimensionError("reassemble: block at grid position exceeds target dims");
      }
    }
    const auto src = block.data.values();
    std::size_t k = 0;
    for (std::size_t c = 0; c < bd[0]; ++c) {
      for (std::size_t h = 0; h < bd[1]; ++h) {
        const std::size_t row =
            ((block.grid[0] * bd[0] + c) * dims[1] + block.grid[1] * bd[1] + h) * dims[2] +
            block.grid[2] * bd[2];
        for (std::size_t w = 0; w < bd[2]; ++w) dst[row + w] = src[k++];
      }
    }
    covered += block.data.size();
  }
  if (covered != result.size()) throw DimensionError("reassemble: blocks do not tile the target");
  return result;
}

}  // namespace cpool
