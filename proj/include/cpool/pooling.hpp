#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "cpool/hashplan.hpp"
#include "cpool/tensor.hpp"

namespace cpool {

// Time: the inverse transform is applied and the result is real.
// Frequency: the elementwise spectral product is returned as-is (complex).
enum class Domain { time, frequency };

struct PoolingConfig {
  std::vector<std::size_t> output_dims;  // {d} for mcb, {d1, d2, d3, d4} for mct
  Domain variant = Domain::time;
  bool pad_with_ones = false;  // mcb only
  std::uint64_t seed = 0;
};

struct PooledFeature {
  std::variant<DenseTensor, ComplexTensor> data;
  Domain domain = Domain::time;
  PoolingConfig config;
  std::vector<std::shared_ptr<const SketchPlan>> plans;

  const DenseTensor& real() const { return std::get<DenseTensor>(data); }
  const ComplexTensor& spectrum() const { return std::get<ComplexTensor>(data); }
  const Shape& dims() const;
};

// Compact bilinear pooling of two vectors: cs(x) circularly convolved with
// cs(y), which equals the count sketch of x (x) y under compose_sum.
//
// With pad_with_ones the inputs become [x; 1 (n2 times)] and [y; 1 (n1 times)]
// so the sketched product also carries x, y and a constant term.
PooledFeature mcb(const DenseTensor& x, const DenseTensor& y, const PoolingConfig& cfg);

// As mcb, with caller-supplied plans over the (possibly padded) input lengths.
PooledFeature mcb(const DenseTensor& x, const DenseTensor& y, const PoolingConfig& cfg,
                  std::shared_ptr<const SketchPlan> x_plan, std::shared_ptr<const SketchPlan> y_plan);

// Compact tensor pooling of an order-3 image and a text vector.
//
// Frequency variant: Y(f1,f2,f3) = ndfft(ss(I))(f1,f2,f3) * ndfft(cs(v))((f1+f2+f3) mod d4),
// defined for any d1..d4. Time variant: indfft of Y, which is the MD-sketch of
// I (x) v under compose_diag; it requires d1 = d2 = d3 = d4.
PooledFeature mct(const DenseTensor& image, const DenseTensor& text, const PoolingConfig& cfg);

PooledFeature mct(const DenseTensor& image, const DenseTensor& text, const PoolingConfig& cfg,
                  std::shared_ptr<const SketchPlan> image_plan, std::shared_ptr<const SketchPlan> text_plan);

// Sketch of x (x) ... (x) x (degree factors): indfft of the product of the
// spectra of `degree` independent count sketches. Degree 1 is exactly the
// count sketch under the first derived plan.
DenseTensor polynomial_sketch(const DenseTensor& x, std::size_t degree, std::size_t d, std::uint64_t seed);

struct LocalPooled {
  std::array<std::size_t, 3> grid;
  PooledFeature feature;
};

// Splits the image into blocks and applies mct to each, with one image plan
// (over the block dims) and one text plan shared by every block.
std::vector<LocalPooled> local_mct(const DenseTensor& image, const DenseTensor& text,
                                   const std::array<std::size_t, 3>& block_dims, const PoolingConfig& cfg);

// Frequency-domain features flattened as interleaved (re, im) for consumers
// that expect a real vector; time-domain features flattened unchanged.
std::vector<double> flatten_feature(const PooledFeature& feature);

// Entries of x~ (x) y~ read back out of a padded time-domain mcb feature with
// the count-sketch estimator. Exact when the composed hash is injective.
struct PaddedDecoding {
  DenseTensor xy;    // (n1, n2) block, estimates x(i) y(j)
  DenseTensor x;     // (n1), taken from the column j = n2
  DenseTensor y;     // (n2), taken from the row i = n1
  DenseTensor ones;  // (n2, n1) block, estimates the constant 1
};
PaddedDecoding decode_padded_mcb(const PooledFeature& feature, std::size_t n1, std::size_t n2);

}  // namespace cpool
