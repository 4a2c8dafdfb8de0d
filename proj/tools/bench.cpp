#include <chrono>
#include <cmath>

#include "commands.hpp"
#include "cpool/pooling.hpp"
#include "cpool/random.hpp"
#include "cpool/reference.hpp"

namespace cpool::cli {

namespace {

DenseTensor uniform_tensor(Shape dims, Rng& rng) {
  DenseTensor t(std::move(dims));
  for (double& v : t.values()) v = rng.uniform();
  return t;
}

template <typename F>
auto timed(F&& f, double& runtime_ns) {
  const auto start = std::chrono::steady_clock::now();
  auto result = f();
  runtime_ns = static_cast<double>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
  return result;
}

double relative_error(double estimate, double exact) { return std::abs(estimate - exact) / std::abs(exact); }

}  // namespace

std::vector<BenchRecord> run_sweep(const BenchSpec& spec) {
  switch (spec.method) {
    case BenchMethod::mcb:
      if (spec.sizes.empty() || spec.sizes.size() > 2) throw ContractError("mcb sizes must be n1 or n1,n2");
      break;
    case BenchMethod::mct:
      if (spec.sizes.size() != 4) throw ContractError("mct sizes must be C,H,W,L");
      break;
    case BenchMethod::poly:
      if (spec.sizes.size() != 1) throw ContractError("poly sizes must be a single n");
      if (spec.degree < 1) throw ContractError("poly degree must be >= 1");
      break;
  }
  for (std::size_t d : spec.dims) {
    if (d == 0) throw ContractError("sketch dims must be >= 1");
  }

  std::vector<BenchRecord> records;
  for (std::size_t d : spec.dims) {
    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      const std::uint64_t trial_seed = derive_seed(spec.seed, "trial", trial);
      const std::uint64_t plan_seed = derive_seed(trial_seed, "d", d);
      Rng rng(derive_seed(trial_seed, "inputs"));

      BenchRecord base;
      base.method = spec.method;
      base.d = d;
      base.trial = trial;
      base.seed = plan_seed;
      auto emit = [&](BenchMetric metric, double value) {
        BenchRecord r = base;
        r.metric = metric;
        r.value = value;
        records.push_back(r);
      };

      double runtime_ns = 0.0;
      double estimate = 0.0;
      double exact = 0.0;
      std::optional<double> oracle_err;
      std::size_t out_cells = 0;

      if (spec.method == BenchMethod::mcb) {
        const std::size_t n1 = spec.sizes[0];
        const std::size_t n2 = spec.sizes.size() == 2 ? spec.sizes[1] : n1;
        base.n1 = n1;
        base.n2 = n2;
        const DenseTensor x1 = uniform_tensor({n1}, rng), y1 = uniform_tensor({n2}, rng);
        const DenseTensor x2 = uniform_tensor({n1}, rng), y2 = uniform_tensor({n2}, rng);
        const PoolingConfig cfg{{d}, Domain::time, false, plan_seed};
        const PooledFeature f1 = timed([&] { return mcb(x1, y1, cfg); }, runtime_ns);
        const PooledFeature f2 = mcb(x2, y2, cfg);
        estimate = inner_product(f1.real(), f2.real());
        exact = inner_product(x1, x2) * inner_product(y1, y2);
        out_cells = f1.real().size();
        if (n1 * n2 <= oracle_cap()) oracle_err = max_abs_diff(f1.real(), mcb_oracle(x1, y1, d, plan_seed));
      } else if (spec.method == BenchMethod::mct) {
        const Shape image_dims{spec.sizes[0], spec.sizes[1], spec.sizes[2]};
        const std::size_t L = spec.sizes[3];
        base.C = image_dims[0];
        base.H = image_dims[1];
        base.W = image_dims[2];
        base.L = L;
        const DenseTensor i1 = uniform_tensor(image_dims, rng), v1 = uniform_tensor({L}, rng);
        const DenseTensor i2 = uniform_tensor(image_dims, rng), v2 = uniform_tensor({L}, rng);
        const PoolingConfig cfg{{d, d, d, d}, Domain::time, false, plan_seed};
        const PooledFeature f1 = timed([&] { return mct(i1, v1, cfg); }, runtime_ns);
        const PooledFeature f2 = mct(i2, v2, cfg);
        estimate = inner_product(f1.real(), f2.real());
        exact = inner_product(i1, i2) * inner_product(v1, v2);
        out_cells = f1.real().size();
        if (i1.size() * L <= oracle_cap()) oracle_err = max_abs_diff(f1.real(), mct_oracle(i1, v1, d, plan_seed));
      } else {
        const std::size_t n = spec.sizes[0];
        base.n1 = n;
        const DenseTensor x = uniform_tensor({n}, rng), y = uniform_tensor({n}, rng);
        const DenseTensor px = timed([&] { return polynomial_sketch(x, spec.degree, d, plan_seed); }, runtime_ns);
        const DenseTensor py = polynomial_sketch(y, spec.degree, d, plan_seed);
        estimate = inner_product(px, py);
        exact = kernel_oracle(x, y, static_cast<unsigned>(spec.degree));
        out_cells = px.size();
      }

      emit(BenchMetric::rel_err_inner, relative_error(estimate, exact));
      if (oracle_err) emit(BenchMetric::max_abs_err, *oracle_err);
      emit(BenchMetric::runtime_ns, runtime_ns);
      emit(BenchMetric::bytes, static_cast<double>(out_cells * sizeof(double)));
    }
  }
  return records;
}

}  // namespace cpool::cli
