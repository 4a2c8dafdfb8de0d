#include "cpool/spectral.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "cpool/reference.hpp"

namespace cpool {

namespace detail {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p = checked_mul(p, 2);
  return p;
}

}  // namespace

Fft1d::Fft1d(std::size_t n) : n_(n) {
  if (n == 0) throw DimensionError("fft: length must be >= 1");
  m_ = is_power_of_two(n) ? n : next_power_of_two(checked_mul(n, 2) - 1);

  twiddle_.resize(m_ / 2);
  for (std::size_t k = 0; k < m_ / 2; ++k) {
    twiddle_[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m_));
  }
  if (m_ == n_) return;

  // Bluestein: n f = (k^2 + f^2 - (k - f)^2) / 2. k^2 is reduced mod 2n before
  // conversion so the angle stays accurate for large k.
  chirp_.resize(n_);
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % two_n;
    chirp_[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n_));
  }
  chirp_hat_.assign(m_, {});
  chirp_hat_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n_; ++k) {
    chirp_hat_[k] = std::conj(chirp_[k]);
    chirp_hat_[m_ - k] = std::conj(chirp_[k]);
  }
  radix2(chirp_hat_);
}

void Fft1d::radix2(std::vector<std::complex<double>>& a) const {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = m_ / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> u = a[start + k];
        const std::complex<double> v = a[start + k + half] * twiddle_[k * step];
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

void Fft1d::forward(std::vector<std::complex<double>>& data) const {
  if (data.size() != n_) throw DimensionError("fft: buffer length differs from plan length");
  if (m_ == n_) {
    radix2(data);
    return;
  }
  std::vector<std::complex<double>> work(m_);
  for (std::size_t k = 0; k < n_; ++k) work[k] = data[k] * chirp_[k];
  radix2(work);
  // Inverse transform of the product via conjugation.
  for (std::size_t k = 0; k < m_; ++k) work[k] = std::conj(work[k] * chirp_hat_[k]);
  radix2(work);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = chirp_[k] * std::conj(work[k]) * scale;
}

}  // namespace detail

namespace {

// Transforms every fiber along every mode in place.
void transform_all_modes(ComplexTensor& t) {
  const Shape& dims = t.dims();
  auto values = t.values();
  std::map<std::size_t, detail::Fft1d> plans;
  std::size_t stride = 1;
  std::vector<std::complex<double>> fiber;
  for (std::size_t m = dims.size(); m-- > 0;) {
    const std::size_t n = dims[m];
    if (n > 1) {
      const auto& fft = plans.try_emplace(n, n).first->second;
      const std::size_t block = n * stride;
      fiber.resize(n);
      for (std::size_t base = 0; base < values.size(); base += block) {
        for (std::size_t s = 0; s < stride; ++s) {
          for (std::size_t k = 0; k < n; ++k) fiber[k] = values[base + s + k * stride];
          fft.forward(fiber);
          for (std::size_t k = 0; k < n; ++k) values[base + s + k * stride] = fiber[k];
        }
      }
    }
    stride *= n;
  }
}

}  // namespace

ComplexTensor ndfft(const ComplexTensor& t) {
  ComplexTensor out = t;
  transform_all_modes(out);
  return out;
}

ComplexTensor ndfft(const DenseTensor& t) { return ndfft(to_complex(t)); }

ComplexTensor indfft(const ComplexTensor& f) {
  ComplexTensor out = f;
  for (auto& v : out.values()) v = std::conj(v);
  transform_all_modes(out);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out.values()) v = std::conj(v) * scale;
  return out;
}

ComplexTensor naive_ndft(const ComplexTensor& t) {
  if (t.size() > oracle_cap()) {
    throw CapacityError("naive_ndft: " + std::to_string(t.size()) + " cells exceed the oracle cap of " +
                        std::to_string(oracle_cap()));
  }
  const Shape& dims = t.dims();
  const std::size_t order = dims.size();

  // Unit roots per mode: roots[m][k] = exp(-2 pi i k / d_m).
  std::vector<std::vector<std::complex<double>>> roots(order);
  for (std::size_t m = 0; m < order; ++m) {
    roots[m].resize(dims[m]);
    for (std::size_t k = 0; k < dims[m]; ++k) {
      roots[m][k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                        static_cast<double>(dims[m]));
    }
  }

  ComplexTensor out(dims);
  for (std::size_t f = 0; f < t.size(); ++f) {
    const Index freq = t.unravel(f);
    std::complex<double> sum = 0.0;
    for (std::size_t a = 0; a < t.size(); ++a) {
      const Index pos = t.unravel(a);
      std::complex<double> phase = 1.0;
      for (std::size_t m = 0; m < order; ++m) phase *= roots[m][(freq[m] * pos[m]) % dims[m]];
      sum += t[a] * phase;
    }
    out[f] = sum;
  }
  return out;
}

ComplexTensor naive_ndft(const DenseTensor& t) { return naive_ndft(to_complex(t)); }

DenseTensor real_part(const ComplexTensor& t, double scale) {
  double imag_sq = 0.0;
  for (const auto& v : t.values()) imag_sq += v.imag() * v.imag();
  const double limit = kImagResidueTolerance * std::max(frobenius_norm(t), scale) + 1e-300;
  if (std::sqrt(imag_sq) > limit) {
    throw ContractError("real_part: imaginary residue " + std::to_string(std::sqrt(imag_sq)) +
                        " exceeds tolerance");
  }
  DenseTensor out(t.dims());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i].real();
  return out;
}

DenseTensor circular_convolve(const DenseTensor& a, const DenseTensor& b) {
  if (a.order() != 1 || b.order() != 1) throw DimensionError("circular_convolve: inputs must be order 1");
  if (a.dims() != b.dims()) {
    throw DimensionError("circular_convolve: lengths differ (" + std::to_string(a.dim(0)) + " vs " +
                         std::to_string(b.dim(0)) + ")");
  }
  ComplexTensor fa = ndfft(a);
  const ComplexTensor fb = ndfft(b);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  return real_part(indfft(fa), frobenius_norm(a) * frobenius_norm(b));
}

ComplexTensor diag_broadcast_product(const ComplexTensor& x_hat, const ComplexTensor& w_hat) {
  if (x_hat.order() != 3 || w_hat.order() != 1) {
    throw DimensionError("diag_broadcast_product: expects an order-3 and an order-1 spectrum");
  }
  const std::size_t d1 = x_hat.dim(0), d2 = x_hat.dim(1), d3 = x_hat.dim(2), d4 = w_hat.dim(0);
  ComplexTensor y(x_hat.dims());
  std::size_t k = 0;
  for (std::size_t f1 = 0; f1 < d1; ++f1) {
    for (std::size_t f2 = 0; f2 < d2; ++f2) {
      for (std::size_t f3 = 0; f3 < d3; ++f3, ++k) y[k] = x_hat[k] * w_hat[(f1 + f2 + f3) % d4];
    }
  }
  return y;
}

DenseTensor diag_broadcast_convolve(const DenseTensor& x, const DenseTensor& w) {
  if (x.order() != 3 || w.order() != 1) throw DimensionError("diag_broadcast_convolve: expects order 3 and order 1");
  const std::size_t d = w.dim(0);
  if (x.dim(0) != d || x.dim(1) != d || x.dim(2) != d) {
    throw DimensionError("diag_broadcast_convolve: all four sizes must be equal");
  }
  const ComplexTensor y = diag_broadcast_product(ndfft(x), ndfft(w));
  return real_part(indfft(y), frobenius_norm(x) * frobenius_norm(w));
}

}  // namespace cpool
