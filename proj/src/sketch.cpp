#include "cpool/sketch.hpp"

#include <algorithm>

namespace cpool {

namespace {

void require_matching(const DenseTensor& t, const SketchPlan& plan, const char* op) {
  validate(plan);
  if (t.order() != plan.order()) {
    throw DimensionError(std::string(op) + ": tensor order " + std::to_string(t.order()) +
                         " differs from plan order " + std::to_string(plan.order()));
  }
  for (std::size_t m = 0; m < t.order(); ++m) {
    if (t.dim(m) != plan.modes[m].input_size) {
      throw DimensionError(std::string(op) + ": mode " + std::to_string(m) + " has size " +
                           std::to_string(t.dim(m)) + " but plan expects " +
                           std::to_string(plan.modes[m].input_size));
    }
  }
}

}  // namespace

SketchOutput count_sketch(const DenseTensor& v, const SketchPlan& plan) {
  if (v.order() != 1 || plan.order() != 1) throw DimensionError("count_sketch: vector and order-1 plan required");
  require_matching(v, plan, "count_sketch");

  const ModeHash& mode = plan.modes[0];
  DenseTensor w(Shape{mode.output_size});
  auto out = w.values();
  const auto in = v.values();
  for (std::size_t i = 0; i < in.size(); ++i) out[mode.hash_table[i]] += mode.sign_table[i] * in[i];
  return {std::move(w), fingerprint(plan)};
}

SketchOutput md_sketch(const DenseTensor& t, const SketchPlan& plan) {
  require_matching(t, plan, "md_sketch");
  const std::size_t order = plan.order();
  const Shape out_dims = plan.output_dims();

  DenseTensor x(out_dims);
  auto out = x.values();
  const auto in = t.values();

  // Odometer over the input multi-index. Per mode we track the output stride
  // contribution and sign so each cell costs O(1) amortized.
  std::vector<std::size_t> out_stride(order, 1);
  for (std::size_t m = order - 1; m > 0; --m) out_stride[m - 1] = out_stride[m] * out_dims[m];

  Index idx(order, 0);
  std::vector<std::size_t> offset(order + 1, 0);  // offset[m] = sum_{k<m} h_k(i_k) * stride_k
  std::vector<double> sign(order + 1, 1.0);      // sign[m] = prod_{k<m} s_k(i_k)
  auto refresh_from = [&](std::size_t m) {
    for (std::size_t k = m; k < order; ++k) {
      const ModeHash& mh = plan.modes[k];
      offset[k + 1] = offset[k] + mh.hash_table[idx[k]] * out_stride[k];
      sign[k + 1] = sign[k] * mh.sign_table[idx[k]];
    }
  };
  refresh_from(0);

  for (std::size_t flat = 0; flat < in.size(); ++flat) {
    if (in[flat] != 0.0) out[offset[order]] += sign[order] * in[flat];

    std::size_t m = order;
    while (m > 0) {
      --m;
      if (++idx[m] < t.dim(m)) break;
      idx[m] = 0;
    }
    refresh_from(m);
  }
  return {std::move(x), fingerprint(plan)};
}

DenseTensor scatter_sketch(const DenseTensor& t, const ScatterPlan& plan) {
  if (t.dims() != plan.input_dims) throw DimensionError("scatter_sketch: tensor dims differ from plan input dims");
  DenseTensor out(plan.output_dims);
  auto dst = out.values();
  const auto src = t.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[plan.target[i]] += plan.sign[i] * src[i];
  return out;
}

double decode_estimate(const SketchOutput& sketch, const SketchPlan& plan,
                       std::span<const std::size_t> index) {
  if (sketch.plan_id != fingerprint(plan)) {
    throw ContractError("decode_estimate: sketch was produced by a different plan");
  }
  if (index.size() != plan.order()) throw DimensionError("decode_estimate: index order differs from plan order");
  Index bucket(plan.order());
  double sign = 1.0;
  for (std::size_t m = 0; m < plan.order(); ++m) {
    const ModeHash& mode = plan.modes[m];
    if (index[m] >= mode.input_size) {
      throw DimensionError("decode_estimate: index " + std::to_string(index[m]) + " out of range in mode " +
                           std::to_string(m));
    }
    bucket[m] = mode.hash_table[index[m]];
    sign *= mode.sign_table[index[m]];
  }
  return sign * sketch.data.at(bucket);
}

double decode_estimate(const SketchOutput& sketch, const SketchPlan& plan,
                       std::initializer_list<std::size_t> index) {
  return decode_estimate(sketch, plan, std::span<const std::size_t>(index.begin(), index.size()));
}

double aggregate_estimates(std::span<const double> estimates, Aggregate strategy) {
  if (estimates.empty()) throw ContractError("aggregate_estimates: no estimates");
  if (strategy == Aggregate::mean) {
    double sum = 0.0;
    for (double e : estimates) sum += e;
    return sum / static_cast<double>(estimates.size());
  }
  std::vector<double> sorted(estimates.begin(), estimates.end());
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>((sorted.size() - 1) / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  return *mid;
}

}  // namespace cpool
