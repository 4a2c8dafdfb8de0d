#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpool/tensor.hpp"

namespace cpool {

// One mode's hash h: [input_size] -> [output_size] and sign s: [input_size] -> {+1,-1}.
struct ModeHash {
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  std::vector<std::size_t> hash_table;
  std::vector<std::int8_t> sign_table;

  bool operator==(const ModeHash&) const = default;
};

// Per-mode hash/sign families parameterizing a count sketch (order 1) or an
// MD-sketch (order N).
struct SketchPlan {
  std::vector<ModeHash> modes;
  std::uint64_t seed = 0;

  std::size_t order() const noexcept { return modes.size(); }
  Shape input_dims() const;
  Shape output_dims() const;

  bool operator==(const SketchPlan&) const = default;
};

// Throws DimensionError unless every mode's tables agree with its sizes.
void validate(const SketchPlan& plan);

// Fully random hash and sign tables.
//
// Mode m draws from its own stream seeded by derive_seed(seed, "mode", m):
// for each input index in order, one bounded draw picks the bucket and one
// draw picks the sign. A plan therefore depends only on (seed, dims), and
// appending modes leaves earlier modes untouched.
SketchPlan build_plan(std::span<const std::size_t> input_dims,
                      std::span<const std::size_t> output_dims, std::uint64_t seed);
SketchPlan build_plan(std::initializer_list<std::size_t> input_dims,
                      std::initializer_list<std::size_t> output_dims, std::uint64_t seed);

// The sketch of x (x) y induced by two order-1 plans with a common output size:
// flat index i*n2 + j hashes to (hx(i) + hy(j)) mod d with sign sx(i)*sy(j).
SketchPlan compose_sum(const SketchPlan& px, const SketchPlan& py);

// Explicit cell-by-cell scatter map for sketches that do not factor per mode.
struct ScatterPlan {
  Shape input_dims;
  Shape output_dims;
  std::vector<std::size_t> target;  // flat output index per flat input cell
  std::vector<std::int8_t> sign;
};

// Maps cell (i, j, k, l) of an order-4 tensor I (x) v to output location
// ((h1(i)+h4(l)) mod d, (h2(j)+h4(l)) mod d, (h3(k)+h4(l)) mod d) with sign
// s1(i)s2(j)s3(k)s4(l). All four output sizes must equal d.
ScatterPlan compose_diag(const SketchPlan& image_plan, const SketchPlan& text_plan);

// True when no two input cells of an order-1 plan share a bucket.
bool is_injective(const SketchPlan& plan);

// Stable 64-bit digest of a plan's sizes and tables. Identifies which plan
// produced a sketch.
std::uint64_t fingerprint(const SketchPlan& plan);

// Sub-plans of the pooling operators. A pooling call with seed s draws its
// plans from derive_seed(s, "x"), (s, "y"), (s, "img"), (s, "txt") and, for the
// r-th polynomial factor, (s, "x", r). The oracles use the same helpers, so a
// single seed reproduces every table in a pipeline.
struct BilinearPlans {
  SketchPlan x;  // [n1] -> [d]
  SketchPlan y;  // [n2] -> [d]
};
BilinearPlans bilinear_plans(std::size_t n1, std::size_t n2, std::size_t d, std::uint64_t seed);

struct TensorPlans {
  SketchPlan image;  // (C, H, W) -> (d1, d2, d3)
  SketchPlan text;   // [L] -> [d4]
};
TensorPlans tensor_plans(std::span<const std::size_t> image_dims, std::size_t text_len,
                         std::span<const std::size_t> output_dims, std::uint64_t seed);

std::vector<SketchPlan> polynomial_plans(std::size_t n, std::size_t d, std::size_t degree,
                                         std::uint64_t seed);

// Plan text format, one `key = value` per line, '#' starts a comment:
//
//   version = 1
//   seed = 7
//   modes = 1
//   modes[0].input_size = 4
//   modes[0].output_size = 2
//   modes[0].hash_table = 0 1 1 0
//   modes[0].sign_table = 1 -1 -1 1
//
// load_plan throws ParseError naming the line and column of the first problem.
std::string save_plan(const SketchPlan& plan);
SketchPlan load_plan(std::string_view text);

}  // namespace cpool
