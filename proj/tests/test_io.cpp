#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cpool/io.hpp"
#include "cpool/spectral.hpp"
#include "test_util.hpp"

using namespace cpool;
using cpool::testing::gaussian;
using cpool::testing::TempDir;

namespace {

std::vector<std::uint8_t> header(std::uint8_t order, std::uint8_t dtype, std::vector<std::uint64_t> dims) {
  std::vector<std::uint8_t> out{'T', 'S', 'K', '1', 1, order, dtype, 0};
  for (std::uint64_t d : dims)
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(d >> (8 * b)));
  return out;
}

void append_doubles(std::vector<std::uint8_t>& out, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) {
    const auto bits = std::bit_cast<std::uint64_t>(static_cast<double>(k) + 0.5);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
  }
}

bool bit_identical(const DenseTensor& a, const DenseTensor& b) {
  if (a.dims() != b.dims()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("tensor files round-trip bit-exactly") {
  TempDir dir("io_roundtrip");
  DenseTensor t = gaussian({2, 3, 4}, 1);
  t[0] = -0.0;
  t[1] = std::numeric_limits<double>::denorm_min();
  t[2] = std::numeric_limits<double>::max();
  t[3] = -std::numeric_limits<double>::min();
  write_tensor(t, dir / "t.tsk");
  const DenseTensor back = read_dense(dir / "t.tsk");
  CHECK(bit_identical(back, t));
  CHECK(std::signbit(back[0]));

  const ComplexTensor c = ndfft(gaussian({3, 5}, 2));
  write_tensor(c, dir / "c.tsk");
  CHECK(std::get<ComplexTensor>(read_tensor(dir / "c.tsk")) == c);
  CHECK_THROWS_AS(read_dense(dir / "c.tsk"), FormatError);

  write_tensor(DenseTensor::scalar(3.0), dir / "s.tsk");
  CHECK(read_dense(dir / "s.tsk") == DenseTensor::scalar(3.0));
}

TEST_CASE("random tensors round-trip bit-exactly") {
  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    Shape dims(rng.below(4));
    for (auto& d : dims) d = 1 + rng.below(5);
    DenseTensor t(dims);
    // Arbitrary finite bit patterns, not just Gaussians.
    for (double& v : t.values()) {
      do {
        v = std::bit_cast<double>(rng.next());
      } while (!std::isfinite(v));
    }
    CHECK(bit_identical(std::get<DenseTensor>(decode_tensor(encode_tensor(t))), t));
  }
}

TEST_CASE("encoding is byte-stable and follows the documented layout") {
  const DenseTensor t(Shape{2}, {1.0, -2.0});
  const auto bytes = encode_tensor(t);
  CHECK(bytes == encode_tensor(t));
  const std::vector<std::uint8_t> want{'T', 'S', 'K', '1', 1, 1, 0, 0,        // header
                                       2,   0,   0,   0,   0, 0, 0, 0,        // dims[0] = 2
                                       0,   0,   0,   0,   0, 0, 0xf0, 0x3f,  // 1.0
                                       0,   0,   0,   0,   0, 0, 0,    0xc0}; // -2.0
  CHECK(bytes == want);
}

TEST_CASE("malformed tensor files raise distinct errors") {
  auto good = encode_tensor(DenseTensor(Shape{2, 2}, {1, 2, 3, 4}));

  SUBCASE("bad magic") {
    auto bad = good;
    std::copy_n("XXXX", 4, bad.begin());
    CHECK_THROWS_AS(decode_tensor(bad), BadMagicError);
    CHECK_THROWS_AS(decode_tensor(std::vector<std::uint8_t>{'T', 'S'}), BadMagicError);
  }
  SUBCASE("version mismatch") {
    auto bad = good;
    bad[4] = 2;
    CHECK_THROWS_AS(decode_tensor(bad), VersionMismatchError);
  }
  SUBCASE("truncated payload") {
    auto bad = header(2, 0, {2, 2});
    append_doubles(bad, 3);
    CHECK_THROWS_AS(decode_tensor(bad), TruncatedError);
    CHECK_THROWS_AS(decode_tensor(header(2, 0, {2})), TruncatedError);
    CHECK_THROWS_AS(decode_tensor(std::vector<std::uint8_t>{'T', 'S', 'K', '1', 1}), TruncatedError);
  }
  SUBCASE("dims overflow") {
    const std::uint64_t huge = std::uint64_t{1} << 62;
    CHECK_THROWS_AS(decode_tensor(header(2, 0, {huge, 8})), DimsOverflowError);
  }
  SUBCASE("trailing bytes, zero dims, unknown dtype, reserved byte") {
    auto trailing = good;
    trailing.push_back(0);
    CHECK_THROWS_AS(decode_tensor(trailing), FormatError);
    CHECK_THROWS_AS(decode_tensor(header(1, 0, {0})), FormatError);
    auto dtype = good;
    dtype[6] = 7;
    CHECK_THROWS_AS(decode_tensor(dtype), FormatError);
    auto reserved = good;
    reserved[7] = 1;
    CHECK_THROWS_AS(decode_tensor(reserved), FormatError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(read_tensor("/nonexistent/dir/x.tsk"), IoError); }
}

TEST_CASE("plan files") {
  TempDir dir("io_plan");
  const SketchPlan p = build_plan({7, 3}, {4, 2}, 99);
  write_plan(p, dir / "p.txt");
  CHECK(read_plan(dir / "p.txt") == p);
}

TEST_CASE("CSV output") {
  TempDir dir("io_csv");

  SUBCASE("empty sequence is header only") {
    write_csv({}, dir / "e.csv");
    CHECK(std::string(cpool::testing::slurp(dir / "e.csv").data(), cpool::testing::slurp(dir / "e.csv").size()) ==
          std::string(kCsvHeader) + "\n");
  }
  SUBCASE("one mcb record parses as a plain CSV row") {
    BenchRecord r;
    r.method = BenchMethod::mcb;
    r.n1 = 512;
    r.n2 = 256;
    r.d = 64;
    r.trial = 3;
    r.seed = 77;
    r.metric = BenchMetric::rel_err_inner;
    r.value = 0.1;
    const std::string text = format_csv({r});
    std::istringstream in(text);
    std::string head, row, extra;
    REQUIRE(std::getline(in, head));
    REQUIRE(std::getline(in, row));
    CHECK_FALSE(std::getline(in, extra));
    CHECK(head == kCsvHeader);
    CHECK(row == "mcb,512,256,,,,,64,3,77,rel_err_inner,0.10000000000000001");

    std::vector<std::string> fields;
    std::istringstream cells(row);
    for (std::string f; std::getline(cells, f, ',');) fields.push_back(f);
    CHECK(fields.size() == 12);
    CHECK(std::stod(fields[11]) == 0.1);  // 17 significant digits round-trip
  }
  SUBCASE("1000 records give 1001 lines") {
    std::vector<BenchRecord> records(1000);
    for (std::size_t i = 0; i < records.size(); ++i) {
      records[i].method = BenchMethod::mct;
      records[i].C = 2;
      records[i].metric = BenchMetric::runtime_ns;
      records[i].value = static_cast<double>(i);
    }
    write_csv(records, dir / "big.csv");
    const auto bytes = cpool::testing::slurp(dir / "big.csv");
    CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 1001);
  }
  SUBCASE("unwritable path") { CHECK_THROWS_AS(write_csv({}, "/nonexistent/dir/x.csv"), IoError); }
}
