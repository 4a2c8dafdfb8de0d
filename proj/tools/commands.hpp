#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cpool/io.hpp"

namespace cpool::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIoFailure = 3 };

// Full command line without the program name, e.g. {"gen", "--shape", "4x4"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Each takes the arguments after the subcommand name.
int run_gen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_pool(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_selfcheck(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "4x4x4" or "16" -> dims. Throws ContractError on bad syntax or zero dims.
Shape parse_shape(const std::string& text);

// Comma-separated positive integers ("x" is accepted as a separator too).
std::vector<std::size_t> parse_size_list(const std::string& text);

struct BenchSpec {
  BenchMethod method = BenchMethod::mcb;
  std::vector<std::size_t> sizes;  // mcb: n1[,n2]; mct: C,H,W,L; poly: n
  std::vector<std::size_t> dims;   // sweep over d
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t degree = 2;  // poly only
};

// Runs a sweep and returns raw per-trial rows. Per (d, trial) it records
// rel_err_inner, runtime_ns and bytes, plus max_abs_err against the oracle
// whenever the instance fits under oracle_cap().
//
// Inputs depend only on (seed, trial) and are uniform on [0, 1), which keeps
// the exact inner product away from zero; plans depend on (seed, trial, d).
std::vector<BenchRecord> run_sweep(const BenchSpec& spec);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckOptions {
  std::uint64_t seed = 1;
  // Test hook: flips one sign in the plan handed to the fast MCB path so the
  // MCB identity check must fail.
  bool corrupt_sign_table = false;
};

std::vector<CheckResult> run_selfchecks(const SelfCheckOptions& options);

}  // namespace cpool::cli
