#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cpool/tensor.hpp"

namespace cpool {

// Forward N-d DFT, unnormalized:
//   F(f) = sum_a t(a) * exp(-2 pi i sum_m f_m a_m / d_m).
// Any dims are accepted; power-of-two lengths use radix-2, others Bluestein.
ComplexTensor ndfft(const ComplexTensor& t);
ComplexTensor ndfft(const DenseTensor& t);

// Inverse N-d DFT carrying the 1 / prod(d_m) factor.
ComplexTensor indfft(const ComplexTensor& f);

// Definitional O(n^2) DFT, for testing. Throws CapacityError when the number
// of cells exceeds oracle_cap().
ComplexTensor naive_ndft(const ComplexTensor& t);
ComplexTensor naive_ndft(const DenseTensor& t);

// Largest imaginary residue, relative to the Frobenius norm, that real_part
// accepts.
inline constexpr double kImagResidueTolerance = 1e-9;

// Real part of a tensor known to be real up to rounding. Throws ContractError
// if ||imag|| exceeds kImagResidueTolerance * max(||t||, scale). Pass the
// product of the input norms as scale when the result may cancel to ~0.
DenseTensor real_part(const ComplexTensor& t, double scale = 0.0);

// c(t) = sum_m a((t - m) mod d) * b(m), via the frequency domain.
DenseTensor circular_convolve(const DenseTensor& a, const DenseTensor& b);

// Z(t1,t2,t3) = sum_m X((t1-m) mod d, (t2-m) mod d, (t3-m) mod d) * w(m),
// computed as indfft(ndfft(X)(f) * ndfft(w)((f1+f2+f3) mod d)).
DenseTensor diag_broadcast_convolve(const DenseTensor& x, const DenseTensor& w);

// Elementwise product of a 3-d spectrum with a 1-d spectrum indexed at
// (f1 + f2 + f3) mod len(w).
ComplexTensor diag_broadcast_product(const ComplexTensor& x_hat, const ComplexTensor& w_hat);

namespace detail {

// In-place 1-d transform of one contiguous buffer.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  void forward(std::vector<std::complex<double>>& data) const;

 private:
  void radix2(std::vector<std::complex<double>>& data) const;

  std::size_t n_;
  std::size_t m_;  // radix-2 length used internally
  std::vector<std::complex<double>> twiddle_;  // exp(-2 pi i k / m_), k < m_/2
  // Bluestein state; empty when n_ is a power of two.
  std::vector<std::complex<double>> chirp_;      // exp(-pi i k^2 / n_), k < n_
  std::vector<std::complex<double>> chirp_hat_;  // FFT of the padded conjugate chirp
};

}  // namespace detail

}  // namespace cpool
