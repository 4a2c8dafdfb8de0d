#include <cmath>
#include <sstream>

#include "commands.hpp"
#include "cpool/pooling.hpp"
#include "cpool/random.hpp"
#include "cpool/reference.hpp"
#include "cpool/spectral.hpp"

namespace cpool::cli {

namespace {

constexpr double kTolerance = 1e-9;

DenseTensor gaussian_tensor(Shape dims, Rng& rng) {
  DenseTensor t(std::move(dims));
  for (double& v : t.values()) v = rng.gaussian();
  return t;
}

std::string format_error(double e) {
  std::ostringstream s;
  s << "max error " << e;
  return s.str();
}

CheckResult check_mcb_identity(std::uint64_t seed, bool corrupt) {
  Rng rng(derive_seed(seed, "selfcheck.mcb"));
  double worst = 0.0;
  const std::size_t cases[][3] = {{3, 5, 8}, {8, 8, 16}, {13, 4, 5}, {1, 7, 1}};
  for (const auto& [n1, n2, d] : cases) {
    const DenseTensor x = gaussian_tensor({n1}, rng);
    const DenseTensor y = gaussian_tensor({n2}, rng);
    const std::uint64_t plan_seed = rng.next();
    BilinearPlans plans = bilinear_plans(n1, n2, d, plan_seed);
    if (corrupt) plans.x.modes[0].sign_table[0] = static_cast<std::int8_t>(-plans.x.modes[0].sign_table[0]);
    const PoolingConfig cfg{{d}, Domain::time, false, plan_seed};
    const PooledFeature fast = mcb(x, y, cfg, std::make_shared<const SketchPlan>(std::move(plans.x)),
                                   std::make_shared<const SketchPlan>(std::move(plans.y)));
    worst = std::max(worst, max_abs_diff(fast.real(), mcb_oracle(x, y, d, plan_seed)));
  }
  return {"mcb_identity", worst <= kTolerance, format_error(worst)};
}

CheckResult check_mct_identity(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "selfcheck.mct"));
  double worst = 0.0;
  const std::size_t cases[][5] = {{3, 4, 5, 6, 4}, {2, 2, 2, 3, 8}, {1, 1, 1, 1, 1}};
  for (const auto& [c, h, w, l, d] : cases) {
    const DenseTensor image = gaussian_tensor({c, h, w}, rng);
    const DenseTensor text = gaussian_tensor({l}, rng);
    const std::uint64_t plan_seed = rng.next();
    const PooledFeature fast = mct(image, text, {{d, d, d, d}, Domain::time, false, plan_seed});
    worst = std::max(worst, max_abs_diff(fast.real(), mct_oracle(image, text, d, plan_seed)));
  }
  return {"mct_identity", worst <= kTolerance, format_error(worst)};
}

CheckResult check_fft(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "selfcheck.fft"));
  double worst = 0.0;
  const Shape shapes[] = {{5}, {16}, {4, 6}, {3, 4, 5}, {7, 1, 2}};
  for (const Shape& dims : shapes) {
    const DenseTensor t = gaussian_tensor(dims, rng);
    const ComplexTensor fast = ndfft(t);
    const ComplexTensor naive = naive_ndft(t);
    ComplexTensor diff = fast;
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= naive[k];
    worst = std::max(worst, frobenius_norm(diff) / frobenius_norm(naive));
    const DenseTensor back = real_part(indfft(fast));
    worst = std::max(worst, max_abs_diff(back, t) / frobenius_norm(t));
  }
  return {"fft_vs_naive", worst <= kTolerance, format_error(worst)};
}

CheckResult check_padding(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "selfcheck.pad"));
  const std::size_t n1 = 2, n2 = 3, d = 256;
  const DenseTensor x = gaussian_tensor({n1}, rng);
  const DenseTensor y = gaussian_tensor({n2}, rng);

  // Search for a seed whose composed hash over the padded lengths is injective.
  std::uint64_t plan_seed = 0;
  bool found = false;
  for (std::uint64_t k = 0; k < 10000 && !found; ++k) {
    plan_seed = derive_seed(seed, "selfcheck.pad.plan", k);
    const BilinearPlans p = bilinear_plans(n1 + n2, n2 + n1, d, plan_seed);
    found = is_injective(compose_sum(p.x, p.y));
  }
  if (!found) return {"padding_recovery", false, "no injective plan found"};

  const PooledFeature f = mcb(x, y, {{d}, Domain::time, true, plan_seed});
  const PaddedDecoding dec = decode_padded_mcb(f, n1, n2);
  double worst = max_abs_diff(dec.xy, outer_product(x, y));
  worst = std::max(worst, max_abs_diff(dec.x, x));
  worst = std::max(worst, max_abs_diff(dec.y, y));
  for (double one : dec.ones.values()) worst = std::max(worst, std::abs(one - 1.0));
  return {"padding_recovery", worst <= kTolerance, format_error(worst)};
}

CheckResult check_roundtrips(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "selfcheck.io"));
  DenseTensor real = gaussian_tensor({2, 3, 4}, rng);
  real[0] = -0.0;
  ComplexTensor spectrum = ndfft(gaussian_tensor({3, 2}, rng));
  const bool real_ok = std::get<DenseTensor>(decode_tensor(encode_tensor(real))) == real &&
                       std::signbit(std::get<DenseTensor>(decode_tensor(encode_tensor(real)))[0]);
  const bool complex_ok = std::get<ComplexTensor>(decode_tensor(encode_tensor(spectrum))) == spectrum;

  const SketchPlan plan = build_plan({4, 5, 6}, {3, 2, 7}, rng.next());
  const bool plan_ok = load_plan(save_plan(plan)) == plan;
  std::string detail;
  if (!real_ok) detail += "real tensor ";
  if (!complex_ok) detail += "complex tensor ";
  if (!plan_ok) detail += "plan ";
  return {"roundtrip", real_ok && complex_ok && plan_ok, detail.empty() ? "" : "mismatch: " + detail};
}

}  // namespace

std::vector<CheckResult> run_selfchecks(const SelfCheckOptions& options) {
  std::vector<CheckResult> results;
  auto guarded = [&results](const char* name, auto&& check) {
    try {
      results.push_back(check());
    } catch (const std::exception& e) {
      results.push_back({name, false, e.what()});
    }
  };
  guarded("mcb_identity", [&] { return check_mcb_identity(options.seed, options.corrupt_sign_table); });
  guarded("mct_identity", [&] { return check_mct_identity(options.seed); });
  guarded("fft_vs_naive", [&] { return check_fft(options.seed); });
  guarded("padding_recovery", [&] { return check_padding(options.seed); });
  guarded("roundtrip", [&] { return check_roundtrips(options.seed); });
  return results;
}

}  // namespace cpool::cli
