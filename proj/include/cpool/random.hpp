#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cpool {

// Deterministic random source used for every table and synthetic input.
//
// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
// C++ standard. The conversions below (bounded integers, uniform reals,
// Gaussians) are written out here rather than taken from <random>'s
// distributions, whose algorithms differ between standard libraries. The
// result: a given seed yields the same stream on every platform and build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // +1 or -1 with equal probability.
  int sign() { return (next() >> 63) != 0 ? -1 : 1; }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Child seed for a named sub-stream. Plan modes, pooling sub-plans and bench
// trials all derive their seeds through here so that adding a consumer never
// shifts the draws of another.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

}  // namespace cpool
