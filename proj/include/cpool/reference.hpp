#pragma once

#include <cstddef>
#include <cstdint>

#include "cpool/tensor.hpp"

// Brute-force definitional oracles. These materialize the full outer product
// and scatter it cell by cell; they share nothing with the fast paths except
// the plan tables from hashplan.
namespace cpool {

inline constexpr std::size_t kDefaultOracleCap = 65536;

// Maximum number of cells any oracle (including naive_ndft) will materialize.
std::size_t oracle_cap() noexcept;
void set_oracle_cap(std::size_t cap) noexcept;

// Sketch of x (x) y under compose_sum of bilinear_plans(n1, n2, d, seed).
// With pad set, x and y are first extended as [x; 1 (n2 times)] and
// [y; 1 (n1 times)], matching mcb's padding.
DenseTensor mcb_oracle(const DenseTensor& x, const DenseTensor& y, std::size_t d, std::uint64_t seed,
                       bool pad = false);

// MD-sketch of the order-4 tensor I (x) v under compose_diag of
// tensor_plans(..., (d, d, d, d), seed). Output dims (d, d, d).
DenseTensor mct_oracle(const DenseTensor& image, const DenseTensor& text, std::size_t d,
                       std::uint64_t seed);

// <x, y>^p. p = 0 gives 1.
double kernel_oracle(const DenseTensor& x, const DenseTensor& y, unsigned p);

}  // namespace cpool
