#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <iostream>
#include <sstream>

#include "cpool/pooling.hpp"
#include "cpool/random.hpp"

namespace cpool::cli {

namespace {

// Parses args (in natural order) into app; returns an exit code if parsing
// ended the command (help or usage error).
std::optional<int> parse_args(CLI::App& app, const std::vector<std::string>& args, std::ostream& out,
                              std::ostream& err) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kUsage;
  }
  return std::nullopt;
}

std::size_t parse_positive(std::string_view token, const std::string& whole) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ContractError("cannot parse '" + whole + "': '" + std::string(token) + "' is not a positive integer");
  }
  if (value == 0) throw ContractError("cannot parse '" + whole + "': sizes must be >= 1");
  return value;
}

std::string join_dims(const Shape& dims) {
  std::string s;
  for (std::size_t m = 0; m < dims.size(); ++m) s += (m ? "x" : "") + std::to_string(dims[m]);
  return dims.empty() ? "scalar" : s;
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = text.find_first_of(",x", pos);
    out.push_back(parse_positive(std::string_view(text).substr(pos, end - pos), text));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

Shape parse_shape(const std::string& text) {
  if (text.find(',') != std::string::npos) throw ContractError("shape '" + text + "' must use 'x' between dims");
  return parse_size_list(text);
}

int run_gen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Write a random TSK1 tensor", "gen"};
  std::string shape_text;
  std::string dist = "gauss";
  std::uint64_t seed = 0;
  std::string path;
  app.add_option("--shape", shape_text, "CxHxW or N")->required();
  app.add_option("--dist", dist, "Value distribution")->check(CLI::IsMember({"gauss", "uniform"}));
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", path, "Output path")->required();
  if (auto code = parse_args(app, args, out, err)) return *code;

  Shape dims;
  try {
    dims = parse_shape(shape_text);
  } catch (const Error& e) {
    err << "gen: " << e.what() << '\n';
    return kUsage;
  }

  DenseTensor t(dims);
  Rng rng(seed);
  for (double& v : t.values()) v = dist == "gauss" ? rng.gaussian() : rng.uniform();
  try {
    write_tensor(t, path);
  } catch (const IoError& e) {
    err << "gen: " << e.what() << '\n';
    return kIoFailure;
  }
  out << "wrote " << join_dims(t.dims()) << " tensor to " << path << '\n';
  return kOk;
}

int run_pool(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pool input tensors into a compact feature", "pool"};
  std::string mode;
  std::string a_path;
  std::string b_path;
  std::string dims_text;
  std::string variant = "time";
  bool pad = false;
  std::size_t degree = 2;
  std::uint64_t seed = 0;
  std::string out_path;
  app.add_option("--mode", mode, "Pooling operator")->required()->check(CLI::IsMember({"mcb", "mct", "poly"}));
  app.add_option("--a", a_path, "First input (x or image)")->required();
  app.add_option("--b", b_path, "Second input (y or text)");
  app.add_option("--dims", dims_text, "d or d1,d2,d3,d4")->required();
  app.add_option("--variant", variant, "time or freq")->check(CLI::IsMember({"time", "freq"}));
  app.add_flag("--pad", pad, "Pad inputs with ones (mcb)");
  app.add_option("--degree", degree, "Polynomial degree (poly)");
  app.add_option("--seed", seed, "Plan seed");
  app.add_option("--out", out_path, "Output path")->required();
  if (auto code = parse_args(app, args, out, err)) return *code;

  auto usage = [&err](const std::string& rule) {
    err << "pool: " << rule << '\n';
    return kUsage;
  };

  std::vector<std::size_t> dims;
  try {
    dims = parse_size_list(dims_text);
  } catch (const Error& e) {
    return usage(e.what());
  }
  if ((mode == "mcb" || mode == "poly") && dims.size() != 1) return usage(mode + " takes exactly one output dim");
  if (mode == "mct" && dims.size() != 4) return usage("mct takes four output dims d1,d2,d3,d4");
  if (mode != "poly" && b_path.empty()) return usage(mode + " requires --b");
  if (mode == "mct" && variant == "time" && !std::all_of(dims.begin(), dims.end(), [&](std::size_t d) { return d == dims[0]; })) {
    return usage("mct time variant requires d1 = d2 = d3 = d4");
  }
  if (mode == "poly" && variant != "time") return usage("poly supports only the time variant");
  if (mode == "poly" && degree < 1) return usage("poly degree must be >= 1");
  if (pad && mode != "mcb") return usage("--pad applies to mcb only");

  DenseTensor a;
  DenseTensor b;
  try {
    a = read_dense(a_path);
    if (!b_path.empty()) b = read_dense(b_path);
  } catch (const IoError& e) {
    err << "pool: " << e.what() << '\n';
    return kIoFailure;
  }

  PoolingConfig cfg{dims, variant == "time" ? Domain::time : Domain::frequency, pad, seed};
  AnyTensor result;
  std::chrono::nanoseconds elapsed{};
  try {
    const auto start = std::chrono::steady_clock::now();
    if (mode == "mcb") {
      result = mcb(a, b, cfg).data;
    } else if (mode == "mct") {
      result = mct(a, b, cfg).data;
    } else {
      result = polynomial_sketch(a, degree, dims[0], seed);
    }
    elapsed = std::chrono::steady_clock::now() - start;
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    return usage(e.what());
  }

  try {
    write_tensor(result, out_path);
  } catch (const IoError& e) {
    err << "pool: " << e.what() << '\n';
    return kIoFailure;
  }
  const Shape& out_dims = std::visit([](const auto& t) -> const Shape& { return t.dims(); }, result);
  out << "output dims: " << join_dims(out_dims) << '\n';
  out << "wall time: " << elapsed.count() << " ns\n";
  return kOk;
}

int run_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sweep sketch dimension and record error and cost", "bench"};
  std::string method;
  std::string sizes_text;
  std::string dims_text;
  BenchSpec spec;
  std::string csv_path;
  app.add_option("--method", method, "Operator")->required()->check(CLI::IsMember({"mcb", "mct", "poly"}));
  app.add_option("--sizes", sizes_text, "mcb: n1[,n2]; mct: C,H,W,L; poly: n")->required();
  app.add_option("--dims-sweep", dims_text, "Comma-separated sketch dims")->required();
  app.add_option("--trials", spec.trials, "Trials per dim")->required();
  app.add_option("--seed", spec.seed, "Base seed");
  app.add_option("--degree", spec.degree, "Polynomial degree (poly)");
  app.add_option("--csv", csv_path, "Output CSV path")->required();
  if (auto code = parse_args(app, args, out, err)) return *code;

  try {
    spec.method = method == "mcb" ? BenchMethod::mcb : method == "mct" ? BenchMethod::mct : BenchMethod::poly;
    spec.sizes = parse_size_list(sizes_text);
    spec.dims = parse_size_list(dims_text);
  } catch (const Error& e) {
    err << "bench: " << e.what() << '\n';
    return kUsage;
  }

  std::vector<BenchRecord> records;
  try {
    records = run_sweep(spec);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    err << "bench: " << e.what() << '\n';
    return kUsage;
  }
  try {
    write_csv(records, csv_path);
  } catch (const IoError& e) {
    err << "bench: " << e.what() << '\n';
    return kIoFailure;
  }
  out << "wrote " << records.size() << " records to " << csv_path << '\n';
  return kOk;
}

int run_selfcheck(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Run the oracle-equivalence checks", "selfcheck"};
  SelfCheckOptions options;
  bool json = false;
  app.add_option("--seed", options.seed, "Seed for the random instances");
  app.add_flag("--json", json, "Print a JSON summary");
  app.add_flag("--corrupt-sign-table", options.corrupt_sign_table)->group("");
  if (auto code = parse_args(app, args, out, err)) return *code;

  const std::vector<CheckResult> results = run_selfchecks(options);
  bool all = true;
  if (json) {
    nlohmann::ordered_json summary;
    for (const auto& r : results) summary["checks"][r.name] = r.passed;
    for (const auto& r : results) all = all && r.passed;
    summary["passed"] = all;
    out << summary.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name;
      if (!r.detail.empty()) out << "  (" << r.detail << ')';
      out << '\n';
      all = all && r.passed;
    }
  }
  if (!all) {
    err << "selfcheck failed:";
    for (const auto& r : results) {
      if (!r.passed) err << ' ' << r.name;
    }
    err << '\n';
    return kCheckFailed;
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static constexpr const char* kUsageText =
      "usage: cpool <command> [options]\n"
      "commands:\n"
      "  gen        write a random tensor\n"
      "  pool       run mcb, mct or polynomial pooling on tensor files\n"
      "  bench      sweep sketch dims and write a CSV of error and cost\n"
      "  selfcheck  run the oracle-equivalence checks\n"
      "Run 'cpool <command> --help' for options.\n";
  if (args.empty()) {
    err << kUsageText;
    return kUsage;
  }
  const std::string& command = args.front();
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  try {
    if (command == "gen") return run_gen(rest, out, err);
    if (command == "pool") return run_pool(rest, out, err);
    if (command == "bench") return run_bench(rest, out, err);
    if (command == "selfcheck") return run_selfcheck(rest, out, err);
  } catch (const IoError& e) {
    err << command << ": " << e.what() << '\n';
    return kIoFailure;
  }
  if (command == "--help" || command == "-h") {
    out << kUsageText;
    return kOk;
  }
  err << "unknown command '" << command << "'\n" << kUsageText;
  return kUsage;
}

}  // namespace cpool::cli
