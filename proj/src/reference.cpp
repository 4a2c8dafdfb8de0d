#include "cpool/reference.hpp"

#include <atomic>

#include "cpool/hashplan.hpp"

namespace cpool {

namespace {

std::atomic<std::size_t> g_oracle_cap{kDefaultOracleCap};

void check_cap(std::size_t cells, const char* op) {
  if (cells > oracle_cap()) {
    throw CapacityError(std::string(op) + ": " + std::to_string(cells) + " cells exceed the oracle cap of " +
                        std::to_string(oracle_cap()));
  }
}

std::vector<double> padded(const DenseTensor& v, std::size_t ones) {
  std::vector<double> out(v.values().begin(), v.values().end());
  out.resize(out.size() + ones, 1.0);
  return out;
}

}  // namespace

std::size_t oracle_cap() noexcept { return g_oracle_cap.load(std::memory_order_relaxed); }
void set_oracle_cap(std::size_t cap) noexcept { g_oracle_cap.store(cap, std::memory_order_relaxed); }

DenseTensor mcb_oracle(const DenseTensor& x, const DenseTensor& y, std::size_t d, std::uint64_t seed,
                       bool pad) {
  if (x.order() != 1 || y.order() != 1) throw DimensionError("mcb_oracle: inputs must be order 1");
  if (d == 0) throw DimensionError("mcb_oracle: d must be >= 1");
  const std::size_t n1 = x.dim(0);
  const std::size_t n2 = y.dim(0);
  const std::vector<double> xv = pad ? padded(x, n2) : padded(x, 0);
  const std::vector<double> yv = pad ? padded(y, n1) : padded(y, 0);
  check_cap(checked_mul(xv.size(), yv.size()), "mcb_oracle");

  // Explicit outer product, flattened row-major.
  std::vector<double> outer;
  outer.reserve(xv.size() * yv.size());
  for (double a : xv) {
    for (double b : yv) outer.push_back(a * b);
  }

  const BilinearPlans plans = bilinear_plans(xv.size(), yv.size(), d, seed);
  const ModeHash composed = compose_sum(plans.x, plans.y).modes[0];

  DenseTensor out(Shape{d});
  for (std::size_t t = 0; t < outer.size(); ++t) {
    out[composed.hash_table[t]] += composed.sign_table[t] * outer[t];
  }
  return out;
}

DenseTensor mct_oracle(const DenseTensor& image, const DenseTensor& text, std::size_t d,
                       std::uint64_t seed) {
  if (image.order() != 3 || text.order() != 1) throw DimensionError("mct_oracle: expects order-3 image and order-1 text");
  if (d == 0) throw DimensionError("mct_oracle: d must be >= 1");
  const std::size_t cells = checked_mul(image.size(), text.size());
  check_cap(cells, "mct_oracle");

  // Order-4 tensor I (x) v, row-major over (i, j, k, l).
  std::vector<double> outer;
  outer.reserve(cells);
  for (double a : image.values()) {
    for (double b : text.values()) outer.push_back(a * b);
  }

  const std::size_t out_dims[4] = {d, d, d, d};
  const TensorPlans plans = tensor_plans(image.dims(), text.dim(0), out_dims, seed);
  const ScatterPlan scatter = compose_diag(plans.image, plans.text);

  DenseTensor out(Shape{d, d, d});
  for (std::size_t t = 0; t < cells; ++t) out[scatter.target[t]] += scatter.sign[t] * outer[t];
  return out;
}

double kernel_oracle(const DenseTensor& x, const DenseTensor& y, unsigned p) {
  if (x.dims() != y.dims()) throw DimensionError("kernel_oracle: dims differ");
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  double result = 1.0;
  for (unsigned r = 0; r < p; ++r) result *= dot;
  return result;
}

}  // namespace cpool
