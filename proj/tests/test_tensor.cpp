#include <doctest.h>

#include <limits>

#include "cpool/tensor.hpp"
#include "test_util.hpp"

using namespace cpool;
using cpool::testing::gaussian;

TEST_CASE("outer_product examples") {
  CHECK(outer_product(DenseTensor::vector({1, 2}), DenseTensor::vector({3})) ==
        DenseTensor(Shape{2, 1}, {3, 6}));

  const DenseTensor zero = outer_product(DenseTensor::vector({0, 0}), DenseTensor::vector({5, 7}));
  CHECK(zero == DenseTensor(Shape{2, 2}));

  const DenseTensor ab = outer_product(DenseTensor::vector({1, 2}), DenseTensor::vector({3, 4}));
  CHECK(ab.dims() == Shape{2, 2});
  CHECK(flatten(ab) == DenseTensor::vector({3, 4, 6, 8}));
}

TEST_CASE("outer_product of higher orders concatenates dims") {
  const DenseTensor a = gaussian({2, 3}, 1);
  const DenseTensor b = gaussian({4}, 2);
  const DenseTensor c = outer_product(a, b);
  REQUIRE(c.dims() == Shape{2, 3, 4});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 4; ++k) CHECK(c.at({i, j, k}) == a.at({i, j}) * b[k]);

  // Scalars act as the identity on shape.
  const DenseTensor s = outer_product(DenseTensor::scalar(2.0), b);
  CHECK(s.dims() == b.dims());
  CHECK(s[3] == 2.0 * b[3]);
}

TEST_CASE("outer_product is bilinear") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = 1 + rng.below(5), q = 1 + rng.below(5);
    const DenseTensor a = gaussian({p}, rng), a2 = gaussian({p}, rng), b = gaussian({q}, rng);
    const double alpha = rng.gaussian(), beta = rng.gaussian();
    const DenseTensor lhs = outer_product(cpool::testing::axpby(alpha, a, beta, a2), b);
    const DenseTensor rhs =
        cpool::testing::axpby(alpha, outer_product(a, b), beta, outer_product(a2, b));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("inner_product examples") {
  CHECK(inner_product(DenseTensor::vector({1, 2, 3}), DenseTensor::vector({1, 2, 3})) == 14.0);
  CHECK(inner_product(DenseTensor::vector({1, 0}), DenseTensor::vector({0, 1})) == 0.0);

  // Seed-42 vectors against a long-double scalar loop.
  Rng rng(42);
  const DenseTensor a = gaussian({8}, rng), b = gaussian({8}, rng);
  long double oracle = 0.0L;
  for (std::size_t i = 0; i < 8; ++i) oracle += static_cast<long double>(a[i]) * b[i];
  CHECK(inner_product(a, b) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-14));

  CHECK_THROWS_AS(inner_product(DenseTensor::vector({1, 2}), DenseTensor::vector({1, 2, 3})), DimensionError);
  CHECK_THROWS_AS(inner_product(DenseTensor(Shape{2, 3}), DenseTensor(Shape{3, 2})), DimensionError);
}

TEST_CASE("inner product of outer products factors") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(16), m = 1 + rng.below(16);
    const DenseTensor a = gaussian({n}, rng), c = gaussian({n}, rng);
    const DenseTensor b = gaussian({m}, rng), d = gaussian({m}, rng);
    const double lhs = inner_product(outer_product(a, b), outer_product(c, d));
    const double rhs = inner_product(a, c) * inner_product(b, d);
    CHECK(std::abs(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("pad_with_ones") {
  CHECK(pad_with_ones(DenseTensor::vector({2}), 1) == DenseTensor::vector({2, 1}));
  CHECK(pad_with_ones(std::span<const double>{}, 3) == DenseTensor::vector({1, 1, 1}));
  CHECK(pad_with_ones(DenseTensor::vector({5, -1}), 2) == DenseTensor::vector({5, -1, 1, 1}));

  // x~ (x) y~ carries x (x) y, x and y.
  const DenseTensor xt = pad_with_ones(DenseTensor::vector({2}), 1);
  const DenseTensor yt = pad_with_ones(DenseTensor::vector({3}), 1);
  CHECK(outer_product(xt, yt) == DenseTensor(Shape{2, 2}, {6, 2, 3, 1}));

  CHECK_THROWS_AS(pad_with_ones(DenseTensor(Shape{2, 2}), 1), DimensionError);
}

TEST_CASE("tensor construction invariants") {
  CHECK_THROWS_AS(DenseTensor(Shape{2, 0}), DimensionError);
  CHECK_THROWS_AS(DenseTensor(Shape{2, 2}, {1, 2, 3}), DimensionError);
  CHECK_THROWS_AS(DenseTensor::vector(std::vector<double>{}), DimensionError);

  const DenseTensor s = DenseTensor::scalar(4.5);
  CHECK(s.order() == 0);
  CHECK(s.size() == 1);
  CHECK(s.at(std::span<const std::size_t>{}) == 4.5);
  CHECK(DenseTensor().size() == 1);
}

TEST_CASE("capacity errors on overflowing dims") {
  const std::size_t big = std::size_t{1} << 40;
  CHECK_THROWS_AS(checked_volume(Shape{big, big}), CapacityError);
  CHECK_THROWS_AS(DenseTensor(Shape{big, big}), CapacityError);
  CHECK(checked_volume(Shape{}) == 1);
  CHECK_THROWS_AS(checked_mul(std::numeric_limits<std::size_t>::max(), 2), CapacityError);
}

TEST_CASE("row-major linearization") {
  DenseTensor t(Shape{2, 3});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(t.flat_index(Index{i, j}) == 3 * i + j);
      t.at({i, j}) = static_cast<double>(10 * i + j);
    }
  for (std::size_t flat = 0; flat < 6; ++flat) {
    const Index idx = t.unravel(flat);
    CHECK(t.flat_index(idx) == flat);
    CHECK(t[flat] == static_cast<double>(10 * idx[0] + idx[1]));
  }
  CHECK_THROWS_AS(t.at({2, 0}), DimensionError);
  CHECK_THROWS_AS(t.at({0}), DimensionError);
}

TEST_CASE("subdivide examples") {
  const DenseTensor t = gaussian({2, 2, 2}, 5);
  const auto single = subdivide(t, {2, 2, 2});
  REQUIRE(single.size() == 1);
  CHECK(single[0].data == t);
  CHECK(single[0].grid == std::array<std::size_t, 3>{0, 0, 0});

  const DenseTensor u = gaussian({2, 4, 4}, 6);
  const auto blocks = subdivide(u, {2, 2, 2});
  REQUIRE(blocks.size() == 4);
  CHECK(blocks[1].grid == std::array<std::size_t, 3>{0, 0, 1});
  CHECK(blocks[2].grid == std::array<std::size_t, 3>{0, 1, 0});
  CHECK(blocks[3].data.at({1, 1, 0}) == u.at({1, 3, 2}));
  CHECK(reassemble(blocks, u.dims()) == u);

  CHECK_THROWS_AS(subdivide(gaussian({2, 3, 4}, 7), {2, 2, 2}), DimensionError);
  CHECK_THROWS_AS(subdivide(gaussian({4, 4}, 7), {2, 2, 2}), DimensionError);
}

TEST_CASE("subdivide then reassemble is the identity") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::array<std::size_t, 3> block{};
    Shape dims(3);
    for (std::size_t m = 0; m < 3; ++m) {
      block[m] = 1 + rng.below(3);
      dims[m] = block[m] * (1 + rng.below(3));
    }
    const DenseTensor t = gaussian(dims, rng);
    const auto blocks = subdivide(t, block);
    CHECK(blocks.size() == t.size() / (block[0] * block[1] * block[2]));
    CHECK(reassemble(blocks, dims) == t);  // bit-exact
  }
}
