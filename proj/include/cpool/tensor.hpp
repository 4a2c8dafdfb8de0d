#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cpool/errors.hpp"

namespace cpool {

using Shape = std::vector<std::size_t>;
using Index = std::vector<std::size_t>;

// Product of dims with overflow detection. Throws CapacityError on overflow.
std::size_t checked_volume(std::span<const std::size_t> dims);

// Multiplies two sizes, throwing CapacityError on overflow.
std::size_t checked_mul(std::size_t a, std::size_t b);

// Dense N-order array, row-major (last index varies fastest).
//
// Order 0 is a scalar holding exactly one value. Every dim is >= 1.
template <typename T>
class Tensor {
 public:
  using value_type = T;

  // Scalar zero.
  Tensor() : values_(1, T{}) {}

  // Zero-filled tensor of the given shape.
  explicit Tensor(Shape dims) : dims_(std::move(dims)) {
    validate_dims();
    values_.assign(checked_volume(dims_), T{});
  }

  Tensor(Shape dims, std::vector<T> values) : dims_(std::move(dims)), values_(std::move(values)) {
    validate_dims();
    if (values_.size() != checked_volume(dims_)) {
      throw DimensionError("tensor: value count " + std::to_string(values_.size()) +
                           " does not match product of dims " +
                           std::to_string(checked_volume(dims_)));
    }
  }

  static Tensor scalar(T value) { return Tensor(Shape{}, std::vector<T>{value}); }

  // Order-1 tensor holding a copy of the values. Must be nonempty.
  static Tensor vector(std::vector<T> values) {
    const std::size_t n = values.size();
    return Tensor(Shape{n}, std::move(values));
  }
  static Tensor vector(std::initializer_list<T> values) { return vector(std::vector<T>(values)); }

  std::size_t order() const noexcept { return dims_.size(); }
  const Shape& dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t mode) const { return dims_.at(mode); }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const T> values() const noexcept { return values_; }
  std::span<T> values() noexcept { return values_; }

  T& operator[](std::size_t flat) { return values_[flat]; }
  const T& operator[](std::size_t flat) const { return values_[flat]; }

  std::size_t flat_index(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) {
      throw DimensionError("tensor: index of order " + std::to_string(index.size()) +
                           " used on tensor of order " + std::to_string(dims_.size()));
    }
    std::size_t flat = 0;
    for (std::size_t m = 0; m < dims_.size(); ++m) {
      if (index[m] >= dims_[m]) {
        throw DimensionError("tensor: index " + std::to_string(index[m]) + " out of range for mode " +
                             std::to_string(m) + " of size " + std::to_string(dims_[m]));
      }
      flat = flat * dims_[m] + index[m];
    }
    return flat;
  }

  Index unravel(std::size_t flat) const {
    Index index(dims_.size());
    for (std::size_t m = dims_.size(); m-- > 0;) {
      index[m] = flat % dims_[m];
      flat /= dims_[m];
    }
    return index;
  }

  T& at(std::span<const std::size_t> index) { return values_[flat_index(index)]; }
  const T& at(std::span<const std::size_t> index) const { return values_[flat_index(index)]; }
  T& at(std::initializer_list<std::size_t> index) {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  const T& at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

  bool operator==(const Tensor&) const = default;

 private:
  void validate_dims() const {
    for (std::size_t d : dims_) {
      if (d == 0) throw DimensionError("tensor: every dim must be >= 1");
    }
  }

  Shape dims_;
  std::vector<T> values_;
};

using DenseTensor = Tensor<double>;
using ComplexTensor = Tensor<std::complex<double>>;

// result[i..., j...] = a[i...] * b[j...]; result dims are a.dims ++ b.dims.
DenseTensor outer_product(const DenseTensor& a, const DenseTensor& b);

// Sum of elementwise products. Dims must match.
double inner_product(const DenseTensor& a, const DenseTensor& b);

// [x; 1 ... 1] with pad_len trailing ones. The span overload admits an empty x.
DenseTensor pad_with_ones(std::span<const double> x, std::size_t pad_len);
DenseTensor pad_with_ones(const DenseTensor& x, std::size_t pad_len);

// Same dims, values reinterpreted as order 1.
DenseTensor flatten(const DenseTensor& t);

// Largest elementwise |a - b|. Dims must match.
double max_abs_diff(const DenseTensor& a, const DenseTensor& b);
double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b);

double frobenius_norm(const DenseTensor& t);
double frobenius_norm(const ComplexTensor& t);

ComplexTensor to_complex(const DenseTensor& t);

struct Block {
  std::array<std::size_t, 3> grid;  // block coordinate along (C, H, W)
  DenseTensor data;
};

// Tiles an order-3 tensor into blocks of block_dims, in row-major grid order.
// Each block dim must divide the matching tensor dim.
std::vector<Block> subdivide(const DenseTensor& t, const std::array<std::size_t, 3>& block_dims);

// Inverse of subdivide.
DenseTensor reassemble(std::span<const Block> blocks, const Shape& dims);

}  // namespace cpool
