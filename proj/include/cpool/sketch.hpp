#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpool/hashplan.hpp"
#include "cpool/tensor.hpp"

namespace cpool {

// A sketch together with the fingerprint of the plan that produced it.
struct SketchOutput {
  DenseTensor data;
  std::uint64_t plan_id = 0;
};

// w(t) = sum over h(i) = t of s(i) * v(i).
SketchOutput count_sketch(const DenseTensor& v, const SketchPlan& plan);

// X(t_1..t_N) = sum over h_m(i_m) = t_m of prod_m s_m(i_m) * T(i_1..i_N).
// One pass over the input, skipping zeros; the output holds prod(d_m) cells.
SketchOutput md_sketch(const DenseTensor& t, const SketchPlan& plan);

// Applies an explicit scatter map (e.g. compose_diag) to a tensor with the
// map's input dims.
DenseTensor scatter_sketch(const DenseTensor& t, const ScatterPlan& plan);

// Single-sketch count-sketch estimator of T(index):
// prod_m s_m(index_m) * X(h_1(index_1), ..., h_N(index_N)).
double decode_estimate(const SketchOutput& sketch, const SketchPlan& plan,
                       std::span<const std::size_t> index);
double decode_estimate(const SketchOutput& sketch, const SketchPlan& plan,
                       std::initializer_list<std::size_t> index);

enum class Aggregate { mean, median };

// Combines estimates from independent sketches. Median is the lower median.
double aggregate_estimates(std::span<const double> estimates, Aggregate strategy);

}  // namespace cpool
