#include "cpool/pooling.hpp"

#include "cpool/sketch.hpp"
#include "cpool/spectral.hpp"

namespace cpool {

const Shape& PooledFeature::dims() const {
  return std::visit([](const auto& t) -> const Shape& { return t.dims(); }, data);
}

namespace {

void require_plan(const std::shared_ptr<const SketchPlan>& plan, std::size_t order, const char* what) {
  if (!plan) throw ContractError(std::string(what) + " plan is null");
  validate(*plan);
  if (plan->order() != order) {
    throw DimensionError(std::string(what) + " plan must be order " + std::to_string(order));
  }
}

}  // namespace

PooledFeature mcb(const DenseTensor& x, const DenseTensor& y, const PoolingConfig& cfg) {
  if (x.order() != 1 || y.order() != 1) throw DimensionError("mcb: inputs must be order 1");
  if (cfg.output_dims.size() != 1) throw DimensionError("mcb: exactly one output dim required");
  if (cfg.output_dims[0] == 0) throw DimensionError("mcb: d must be >= 1");
  const std::size_t n1 = x.dim(0);
  const std::size_t n2 = y.dim(0);
  const std::size_t len_x = cfg.pad_with_ones ? n1 + n2 : n1;
  const std::size_t len_y = cfg.pad_with_ones ? n2 + n1 : n2;
  BilinearPlans plans = bilinear_plans(len_x, len_y, cfg.output_dims[0], cfg.seed);
  return mcb(x, y, cfg, std::make_shared<const SketchPlan>(std::move(plans.x)),
             std::make_shared<const SketchPlan>(std::move(plans.y)));
}

PooledFeature mcb(const DenseTensor& x, const DenseTensor& y, const PoolingConfig& cfg,
                  std::shared_ptr<const SketchPlan> x_plan, std::shared_ptr<const SketchPlan> y_plan) {
  if (x.order() != 1 || y.order() != 1) throw DimensionError("mcb: inputs must be order 1");
  if (cfg.output_dims.size() != 1) throw DimensionError("mcb: exactly one output dim required");
  require_plan(x_plan, 1, "mcb: x");
  require_plan(y_plan, 1, "mcb: y");
  const std::size_t d = cfg.output_dims[0];
  if (x_plan->modes[0].output_size != d || y_plan->modes[0].output_size != d) {
    throw DimensionError("mcb: plan output sizes must equal d");
  }

  const DenseTensor xt = cfg.pad_with_ones ? pad_with_ones(x, y.dim(0)) : x;
  const DenseTensor yt = cfg.pad_with_ones ? pad_with_ones(y, x.dim(0)) : y;
  const DenseTensor cx = count_sketch(xt, *x_plan).data;
  const DenseTensor cy = count_sketch(yt, *y_plan).data;

  ComplexTensor product = ndfft(cx);
  const ComplexTensor fy = ndfft(cy);
  for (std::size_t k = 0; k < product.size(); ++k) product[k] *= fy[k];

  PooledFeature out{ComplexTensor{}, cfg.variant, cfg, {std::move(x_plan), std::move(y_plan)}};
  if (cfg.variant == Domain::frequency) {
    out.data = std::move(product);
  } else {
    out.data = real_part(indfft(product), frobenius_norm(cx) * frobenius_norm(cy));
  }
  return out;
}

PooledFeature mct(const DenseTensor& image, const DenseTensor& text, const PoolingConfig& cfg) {
  if (image.order() != 3 || text.order() != 1) throw DimensionError("mct: expects an order-3 image and an order-1 text vector");
  if (cfg.output_dims.size() != 4) throw DimensionError("mct: four output dims (d1, d2, d3, d4) required");
  TensorPlans plans = tensor_plans(image.dims(), text.dim(0), cfg.output_dims, cfg.seed);
  return mct(image, text, cfg, std::make_shared<const SketchPlan>(std::move(plans.image)),
             std::make_shared<const SketchPlan>(std::move(plans.text)));
}

PooledFeature mct(const DenseTensor& image, const DenseTensor& text, const PoolingConfig& cfg,
                  std::shared_ptr<const SketchPlan> image_plan, std::shared_ptr<const SketchPlan> text_plan) {
  if (image.order() != 3 || text.order() != 1) throw DimensionError("mct: expects an order-3 image and an order-1 text vector");
  if (cfg.output_dims.size() != 4) throw DimensionError("mct: four output dims (d1, d2, d3, d4) required");
  if (cfg.pad_with_ones) throw ContractError("mct: padding with ones applies to mcb only");
  require_plan(image_plan, 3, "mct: image");
  require_plan(text_plan, 1, "mct: text");
  const auto& od = cfg.output_dims;
  if (image_plan->output_dims() != Shape{od[0], od[1], od[2]} || text_plan->modes[0].output_size != od[3]) {
    throw DimensionError("mct: plan output sizes differ from configured output dims");
  }
  if (cfg.variant == Domain::time && !(od[0] == od[1] && od[1] == od[2] && od[2] == od[3])) {
    throw ContractError("mct: time variant requires d1 = d2 = d3 = d4");
  }

  const DenseTensor sketched_image = md_sketch(image, *image_plan).data;
  const DenseTensor sketched_text = count_sketch(text, *text_plan).data;
  ComplexTensor spectrum = diag_broadcast_product(ndfft(sketched_image), ndfft(sketched_text));

  PooledFeature out{ComplexTensor{}, cfg.variant, cfg, {std::move(image_plan), std::move(text_plan)}};
  if (cfg.variant == Domain::frequency) {
    out.data = std::move(spectrum);
  } else {
    out.data = real_part(indfft(spectrum), frobenius_norm(sketched_image) * frobenius_norm(sketched_text));
  }
  return out;
}

DenseTensor polynomial_sketch(const DenseTensor& x, std::size_t degree, std::size_t d, std::uint64_t seed) {
  if (degree < 1) throw ContractError("polynomial_sketch: degree must be >= 1");
  if (x.order() != 1) throw DimensionError("polynomial_sketch: input must be order 1");
  if (d == 0) throw DimensionError("polynomial_sketch: d must be >= 1");
  const std::vector<SketchPlan> plans = polynomial_plans(x.dim(0), d, degree, seed);
  if (degree == 1) return count_sketch(x, plans[0]).data;

  double scale = 1.0;
  ComplexTensor product;
  for (std::size_t r = 0; r < degree; ++r) {
    const DenseTensor cs = count_sketch(x, plans[r]).data;
    scale *= frobenius_norm(cs);
    const ComplexTensor f = ndfft(cs);
    if (r == 0) {
      product = f;
    } else {
      for (std::size_t k = 0; k < product.size(); ++k) product[k] *= f[k];
    }
  }
  return real_part(indfft(product), scale);
}

std::vector<LocalPooled> local_mct(const DenseTensor& image, const DenseTensor& text,
                                   const std::array<std::size_t, 3>& block_dims, const PoolingConfig& cfg) {
  if (image.order() != 3 || text.order() != 1) throw DimensionError("local_mct: expects an order-3 image and an order-1 text vector");
  if (cfg.output_dims.size() != 4) throw DimensionError("local_mct: four output dims (d1, d2, d3, d4) required");
  std::vector<Block> blocks = subdivide(image, block_dims);

  TensorPlans plans = tensor_plans(block_dims, text.dim(0), cfg.output_dims, cfg.seed);
  auto image_plan = std::make_shared<const SketchPlan>(std::move(plans.image));
  auto text_plan = std::make_shared<const SketchPlan>(std::move(plans.text));

  std::vector<LocalPooled> out;
  out.reserve(blocks.size());
  for (const Block& block : blocks) {
    out.push_back({block.grid, mct(block.data, text, cfg, image_plan, text_plan)});
  }
  return out;
}

std::vector<double> flatten_feature(const PooledFeature& feature) {
  std::vector<double> out;
  if (const auto* real = std::get_if<DenseTensor>(&feature.data)) {
    out.assign(real->values().begin(), real->values().end());
    return out;
  }
  const ComplexTensor& spectrum = feature.spectrum();
  out.reserve(2 * spectrum.size());
  for (const auto& v : spectrum.values()) {
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

PaddedDecoding decode_padded_mcb(const PooledFeature& feature, std::size_t n1, std::size_t n2) {
  if (feature.domain != Domain::time) throw ContractError("decode_padded_mcb: time-domain feature required");
  if (!feature.config.pad_with_ones) throw ContractError("decode_padded_mcb: feature was not padded");
  if (feature.plans.size() != 2) throw ContractError("decode_padded_mcb: feature lacks its two plans");
  const SketchPlan& px = *feature.plans[0];
  const SketchPlan& py = *feature.plans[1];
  const std::size_t len = n1 + n2;
  if (px.modes[0].input_size != len || py.modes[0].input_size != len) {
    throw DimensionError("decode_padded_mcb: plan sizes do not match n1 + n2");
  }

  const ModeHash composed = compose_sum(px, py).modes[0];
  const DenseTensor& sketch = feature.real();
  auto estimate = [&](std::size_t i, std::size_t j) {
    const std::size_t t = i * len + j;
    return composed.sign_table[t] * sketch[composed.hash_table[t]];
  };

  PaddedDecoding out{DenseTensor(Shape{n1, n2}), DenseTensor(Shape{n1}), DenseTensor(Shape{n2}),
                     DenseTensor(Shape{n2, n1})};
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) out.xy.at({i, j}) = estimate(i, j);
    out.x[i] = estimate(i, n2);
  }
  for (std::size_t j = 0; j < n2; ++j) out.y[j] = estimate(n1, j);
  for (std::size_t a = 0; a < n2; ++a) {
    for (std::size_t b = 0; b < n1; ++b) out.ones.at({a, b}) = estimate(n1 + a, n2 + b);
  }
  return out;
}

}  // namespace cpool
