#include "cpool/hashplan.hpp"

#include <algorithm>

#include "cpool/random.hpp"

namespace cpool {

Shape SketchPlan::input_dims() const {
  Shape dims;
  for (const auto& m : modes) dims.push_back(m.input_size);
  return dims;
}

Shape SketchPlan::output_dims() const {
  Shape dims;
  for (const auto& m : modes) dims.push_back(m.output_size);
  return dims;
}

void validate(const SketchPlan& plan) {
  if (plan.modes.empty()) throw DimensionError("sketch plan has no modes");
  for (std::size_t m = 0; m < plan.modes.size(); ++m) {
    const ModeHash& mode = plan.modes[m];
    const std::string where = "sketch plan mode " + std::to_string(m) + ": ";
    if (mode.input_size == 0 || mode.output_size == 0) throw DimensionError(where + "sizes must be >= 1");
    if (mode.hash_table.size() != mode.input_size || mode.sign_table.size() != mode.input_size) {
      throw DimensionError(where + "table length differs from input_size");
    }
    for (std::size_t h : mode.hash_table) {
      if (h >= mode.output_size) throw DimensionError(where + "hash entry out of range");
    }
    for (std::int8_t s : mode.sign_table) {
      if (s != 1 && s != -1) throw DimensionError(where + "sign entry not +1/-1");
    }
  }
}

SketchPlan build_plan(std::span<const std::size_t> input_dims,
                      std::span<const std::size_t> output_dims, std::uint64_t seed) {
  if (input_dims.size() != output_dims.size()) {
    throw DimensionError("build_plan: " + std::to_string(input_dims.size()) + " input dims but " +
                         std::to_string(output_dims.size()) + " output dims");
  }
  if (input_dims.empty()) throw DimensionError("build_plan: at least one mode required");

  SketchPlan plan;
  plan.seed = seed;
  plan.modes.reserve(input_dims.size());
  for (std::size_t m = 0; m < input_dims.size(); ++m) {
    const std::size_t n = input_dims[m];
    const std::size_t d = output_dims[m];
    if (n == 0 || d == 0) throw DimensionError("build_plan: dims must be >= 1");

    Rng rng(derive_seed(seed, "mode", m));
    ModeHash mode{n, d, std::vector<std::size_t>(n), std::vector<std::int8_t>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      mode.hash_table[i] = static_cast<std::size_t>(rng.below(d));
      mode.sign_table[i] = static_cast<std::int8_t>(rng.sign());
    }
    plan.modes.push_back(std::move(mode));
  }
  return plan;
}

SketchPlan build_plan(std::initializer_list<std::size_t> input_dims,
                      std::initializer_list<std::size_t> output_dims, std::uint64_t seed) {
  return build_plan(std::span<const std::size_t>(input_dims.begin(), input_dims.size()),
                    std::span<const std::size_t>(output_dims.begin(), output_dims.size()), seed);
}

SketchPlan compose_sum(const SketchPlan& px, const SketchPlan& py) {
  if (px.order() != 1 || py.order() != 1) throw DimensionError("compose_sum: plans must be order 1");
  const ModeHash& hx = px.modes[0];
  const ModeHash& hy = py.modes[0];
  if (hx.output_size != hy.output_size) {
    throw DimensionError("compose_sum: output sizes differ (" + std::to_string(hx.output_size) +
                         " vs " + std::to_string(hy.output_size) + ")");
  }
  const std::size_t d = hx.output_size;
  const std::size_t n = checked_mul(hx.input_size, hy.input_size);

  ModeHash mode{n, d, std::vector<std::size_t>(n), std::vector<std::int8_t>(n)};
  std::size_t t = 0;
  for (std::size_t i = 0; i < hx.input_size; ++i) {
    for (std::size_t j = 0; j < hy.input_size; ++j, ++t) {
      mode.hash_table[t] = (hx.hash_table[i] + hy.hash_table[j]) % d;
      mode.sign_table[t] = static_cast<std::int8_t>(hx.sign_table[i] * hy.sign_table[j]);
    }
  }
  return SketchPlan{{std::move(mode)}, mix64(px.seed) ^ py.seed};
}

ScatterPlan compose_diag(const SketchPlan& image_plan, const SketchPlan& text_plan) {
  if (image_plan.order() != 3 || text_plan.order() != 1) {
    throw DimensionError("compose_diag: expects an order-3 image plan and an order-1 text plan");
  }
  const ModeHash& h1 = image_plan.modes[0];
  const ModeHash& h2 = image_plan.modes[1];
  const ModeHash& h3 = image_plan.modes[2];
  const ModeHash& h4 = text_plan.modes[0];
  const std::size_t d = h4.output_size;
  if (h1.output_size != d || h2.output_size != d || h3.output_size != d) {
    throw DimensionError("compose_diag: all four output sizes must be equal");
  }

  ScatterPlan scatter;
  scatter.input_dims = {h1.input_size, h2.input_size, h3.input_size, h4.input_size};
  scatter.output_dims = {d, d, d};
  const std::size_t cells = checked_volume(scatter.input_dims);
  scatter.target.resize(cells);
  scatter.sign.resize(cells);

  std::size_t t = 0;
  for (std::size_t i = 0; i < h1.input_size; ++i) {
    for (std::size_t j = 0; j < h2.input_size; ++j) {
      for (std::size_t k = 0; k < h3.input_size; ++k) {
        for (std::size_t l = 0; l < h4.input_size; ++l, ++t) {
          const std::size_t shift = h4.hash_table[l];
          const std::size_t a = (h1.hash_table[i] + shift) % d;
          const std::size_t b = (h2.hash_table[j] + shift) % d;
          const std::size_t c = (h3.hash_table[k] + shift) % d;
          scatter.target[t] = (a * d + b) * d + c;
          scatter.sign[t] = static_cast<std::int8_t>(h1.sign_table[i] * h2.sign_table[j] *
                                                     h3.sign_table[k] * h4.sign_table[l]);
        }
      }
    }
  }
  return scatter;
}

BilinearPlans bilinear_plans(std::size_t n1, std::size_t n2, std::size_t d, std::uint64_t seed) {
  return {build_plan({n1}, {d}, derive_seed(seed, "x")), build_plan({n2}, {d}, derive_seed(seed, "y"))};
}

TensorPlans tensor_plans(std::span<const std::size_t> image_dims, std::size_t text_len,
                         std::span<const std::size_t> output_dims, std::uint64_t seed) {
  if (image_dims.size() != 3) throw DimensionError("tensor_plans: image must be order 3");
  if (output_dims.size() != 4) throw DimensionError("tensor_plans: four output dims (d1, d2, d3, d4) required");
  return {build_plan(image_dims, output_dims.first(3), derive_seed(seed, "img")),
          build_plan({text_len}, {output_dims[3]}, derive_seed(seed, "txt"))};
}

std::vector<SketchPlan> polynomial_plans(std::size_t n, std::size_t d, std::size_t degree,
                                         std::uint64_t seed) {
  std::vector<SketchPlan> plans;
  plans.reserve(degree);
  for (std::size_t r = 0; r < degree; ++r) plans.push_back(build_plan({n}, {d}, derive_seed(seed, "x", r)));
  return plans;
}

bool is_injective(const SketchPlan& plan) {
  if (plan.order() != 1) throw DimensionError("is_injective: plan must be order 1");
  std::vector<bool> used(plan.modes[0].output_size, false);
  for (std::size_t h : plan.modes[0].hash_table) {
    if (used[h]) return false;
    used[h] = true;
  }
  return true;
}

std::uint64_t fingerprint(const SketchPlan& plan) {
  std::uint64_t h = mix64(plan.modes.size());
  auto fold = [&h](std::uint64_t v) { h = mix64(h ^ v); };
  for (const ModeHash& mode : plan.modes) {
    fold(mode.input_size);
    fold(mode.output_size);
    for (std::size_t v : mode.hash_table) fold(v);
    for (std::int8_t s : mode.sign_table) fold(static_cast<std::uint64_t>(s > 0));
  }
  return h;
}

}  // namespace cpool
