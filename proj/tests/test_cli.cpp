#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "commands.hpp"
#include "cpool/io.hpp"
#include "test_util.hpp"

using namespace cpool;
using cpool::testing::slurp;
using cpool::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> csv_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("gen is deterministic and validates its shape") {
  TempDir dir("cli_gen");
  const std::string a = (dir / "a.tsk").string(), b = (dir / "b.tsk").string();
  CHECK(invoke({"gen", "--shape", "4x4x4", "--dist", "gauss", "--seed", "7", "--out", a}).code == 0);
  CHECK(invoke({"gen", "--shape", "4x4x4", "--dist", "gauss", "--seed", "7", "--out", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(read_dense(a).dims() == Shape{4, 4, 4});

  CHECK(invoke({"gen", "--shape", "0x2", "--out", a}).code == 2);
  CHECK(invoke({"gen", "--shape", "4x", "--out", a}).code == 2);
  CHECK(invoke({"gen", "--shape", "4,4", "--out", a}).code == 2);
  CHECK(invoke({"gen", "--shape", "4", "--dist", "cauchy", "--out", a}).code == 2);
  CHECK(invoke({"gen", "--shape", "4"}).code == 2);
  CHECK(invoke({"gen", "--shape", "4", "--out", (dir / "missing" / "x.tsk").string()}).code == 3);
}

TEST_CASE("gen uniform values lie in [0, 1)") {
  TempDir dir("cli_uniform");
  const std::string v = (dir / "v.tsk").string();
  REQUIRE(invoke({"gen", "--shape", "16", "--dist", "uniform", "--seed", "1", "--out", v}).code == 0);
  const DenseTensor t = read_dense(v);
  CHECK(t.dims() == Shape{16});
  for (double x : t.values()) {
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("pool runs each mode and enforces contracts") {
  TempDir dir("cli_pool");
  auto path = [&](const char* f) { return (dir / f).string(); };
  REQUIRE(invoke({"gen", "--shape", "3x4x5", "--seed", "1", "--out", path("img.tsk")}).code == 0);
  REQUIRE(invoke({"gen", "--shape", "6", "--seed", "2", "--out", path("txt.tsk")}).code == 0);
  REQUIRE(invoke({"gen", "--shape", "9", "--seed", "3", "--out", path("x.tsk")}).code == 0);

  const std::vector<std::string> mct_args{"pool", "--mode", "mct", "--a", path("img.tsk"), "--b", path("txt.tsk"),
                                          "--dims", "8,8,8,8", "--variant", "time", "--seed", "3", "--out"};
  auto with_out = [](std::vector<std::string> args, std::string out) {
    args.push_back(std::move(out));
    return args;
  };

  const Run r = invoke(with_out(mct_args, path("y1.tsk")));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("output dims: 8x8x8") != std::string::npos);
  CHECK(r.out.find("wall time") != std::string::npos);
  CHECK(read_dense(path("y1.tsk")).dims() == Shape{8, 8, 8});
  REQUIRE(invoke(with_out(mct_args, path("y2.tsk"))).code == 0);
  CHECK(slurp(path("y1.tsk")) == slurp(path("y2.tsk")));

  const Run unequal = invoke({"pool", "--mode", "mct", "--a", path("img.tsk"), "--b", path("txt.tsk"), "--dims",
                           "8,8,8,4", "--variant", "time", "--seed", "3", "--out", path("bad.tsk")});
  CHECK(unequal.code == 2);
  CHECK(unequal.err.find("d1 = d2 = d3 = d4") != std::string::npos);

  // Frequency variant accepts unequal dims and writes complex data.
  REQUIRE(invoke({"pool", "--mode", "mct", "--a", path("img.tsk"), "--b", path("txt.tsk"), "--dims", "4,5,6,3",
               "--variant", "freq", "--seed", "3", "--out", path("f.tsk")})
              .code == 0);
  const AnyTensor f = read_tensor(path("f.tsk"));
  REQUIRE(std::holds_alternative<ComplexTensor>(f));
  CHECK(std::get<ComplexTensor>(f).dims() == Shape{4, 5, 6});

  CHECK(invoke({"pool", "--mode", "mcb", "--a", path("x.tsk"), "--b", path("txt.tsk"), "--dims", "16", "--pad",
             "--seed", "1", "--out", path("m.tsk")})
            .code == 0);
  CHECK(read_dense(path("m.tsk")).dims() == Shape{16});
  CHECK(invoke({"pool", "--mode", "poly", "--a", path("x.tsk"), "--dims", "32", "--degree", "3", "--seed", "1",
             "--out", path("p.tsk")})
            .code == 0);
  CHECK(read_dense(path("p.tsk")).dims() == Shape{32});

  // Usage errors.
  CHECK(invoke({"pool", "--mode", "mcb", "--a", path("x.tsk"), "--dims", "16", "--out", path("e.tsk")}).code == 2);
  CHECK(invoke({"pool", "--mode", "mcb", "--a", path("x.tsk"), "--b", path("x.tsk"), "--dims", "16,16", "--out",
             path("e.tsk")})
            .code == 2);
  CHECK(invoke({"pool", "--mode", "poly", "--a", path("x.tsk"), "--dims", "16", "--variant", "freq", "--out",
             path("e.tsk")})
            .code == 2);
  CHECK(invoke({"pool", "--mode", "poly", "--a", path("x.tsk"), "--dims", "16", "--degree", "0", "--out",
             path("e.tsk")})
            .code == 2);
  CHECK(invoke({"pool", "--mode", "mct", "--a", path("x.tsk"), "--b", path("txt.tsk"), "--dims", "4,4,4,4", "--out",
             path("e.tsk")})
            .code == 2);  // x is not order 3
  CHECK(invoke({"pool", "--mode", "mct", "--a", path("img.tsk"), "--b", path("txt.tsk"), "--dims", "4,4,4,4",
             "--pad", "--out", path("e.tsk")})
            .code == 2);
  // IO errors.
  CHECK(invoke({"pool", "--mode", "poly", "--a", path("nope.tsk"), "--dims", "16", "--out", path("e.tsk")}).code == 3);
  CHECK(invoke({"pool", "--mode", "poly", "--a", path("x.tsk"), "--dims", "16", "--out",
             (dir / "missing" / "e.tsk").string()})
            .code == 3);
}

TEST_CASE("bench writes raw per-trial rows") {
  TempDir dir("cli_bench");
  const std::string csv = (dir / "e.csv").string();
  REQUIRE(invoke({"bench", "--method", "mcb", "--sizes", "64", "--dims-sweep", "16,64", "--trials", "5", "--seed",
               "1", "--csv", csv})
              .code == 0);
  const auto lines = csv_lines(csv);
  REQUIRE(!lines.empty());
  CHECK(lines[0] == kCsvHeader);
  auto count = [&](const std::string& metric) {
    return std::count_if(lines.begin(), lines.end(),
                         [&](const std::string& l) { return l.find("," + metric + ",") != std::string::npos; });
  };
  CHECK(count("rel_err_inner") == 10);
  CHECK(count("runtime_ns") == 10);
  CHECK(count("bytes") == 10);
  CHECK(count("max_abs_err") == 10);  // 64 * 64 fits under the oracle cap
  CHECK(lines[1].rfind("mcb,64,64,,,,,16,0,", 0) == 0);

  REQUIRE(invoke({"bench", "--method", "mcb", "--sizes", "64", "--dims-sweep", "16", "--trials", "0", "--csv", csv})
              .code == 0);
  CHECK(csv_lines(csv) == std::vector<std::string>{kCsvHeader});

  CHECK(invoke({"bench", "--method", "mct", "--sizes", "2,3,4,5", "--dims-sweep", "4", "--trials", "2", "--csv", csv})
            .code == 0);
  CHECK(csv_lines(csv).size() == 1 + 2 * 4);
  CHECK(invoke({"bench", "--method", "poly", "--sizes", "8", "--dims-sweep", "8,16", "--trials", "3", "--degree",
             "2", "--csv", csv})
            .code == 0);
  CHECK(csv_lines(csv).size() == 1 + 2 * 3 * 3);

  CHECK(invoke({"bench", "--method", "mct", "--sizes", "2,3", "--dims-sweep", "4", "--trials", "2", "--csv", csv})
            .code == 2);
  CHECK(invoke({"bench", "--method", "mcb", "--sizes", "8", "--dims-sweep", "0", "--trials", "2", "--csv", csv})
            .code == 2);
  CHECK(invoke({"bench", "--method", "mcb", "--sizes", "8", "--trials", "2", "--csv", csv}).code == 2);
  CHECK(invoke({"bench", "--method", "mcb", "--sizes", "8", "--dims-sweep", "8", "--trials", "1", "--csv",
             (dir / "missing" / "e.csv").string()})
            .code == 3);
}

TEST_CASE("selfcheck passes, fails on a corrupted plan, and emits JSON") {
  const Run ok = invoke({"selfcheck"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS mcb_identity") != std::string::npos);

  CHECK(invoke({"selfcheck", "--seed", "99"}).code == 0);
  CHECK(invoke({"selfcheck", "--seed", "100"}).code == 0);

  const Run bad = invoke({"selfcheck", "--corrupt-sign-table"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("mcb_identity") != std::string::npos);
  CHECK(bad.out.find("FAIL mcb_identity") != std::string::npos);

  const Run json = invoke({"selfcheck", "--json", "--seed", "5"});
  CHECK(json.code == 0);
  const auto summary = nlohmann::json::parse(json.out);
  CHECK(summary["passed"] == true);
  for (const char* name : {"mcb_identity", "mct_identity", "fft_vs_naive", "padding_recovery", "roundtrip"}) {
    CHECK(summary["checks"][name] == true);
  }
  CHECK(invoke({"selfcheck", "--json", "--seed", "5"}).out == json.out);
}

TEST_CASE("top-level dispatch") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"gen", "--help"}).code == 0);
  CHECK(invoke({"gen", "--bogus"}).code == 2);
}

TEST_CASE("size list parsing") {
  CHECK(cli::parse_size_list("16,64,256") == std::vector<std::size_t>{16, 64, 256});
  CHECK(cli::parse_shape("4x5x6") == Shape{4, 5, 6});
  CHECK_THROWS_AS(cli::parse_size_list(""), ContractError);
  CHECK_THROWS_AS(cli::parse_size_list("3,,4"), ContractError);
  CHECK_THROWS_AS(cli::parse_size_list("-3"), ContractError);
}
