#pragma once

// Thin wrapper over FFTW. Conventions, stated once for the whole library:
//
//   forward:  X_k = sum_n x_n exp(-2 pi i k n / N)     (no scaling)
//   inverse:  x_n = sum_k X_k exp(+2 pi i k n / N)     (no scaling; divide by N to invert)
//
// For samples s(t_n), t_n = t_0 + n dt, the continuous transform
//   s^(kappa) = (2 pi)^{-1/2} int exp(-i kappa t) s(t) dt
// is approximated at kappa_k = 2 pi k / (N dt) by
//   dt (2 pi)^{-1/2} exp(-i kappa_k t_0) X_k,
// with k read as a signed index in (-N/2, N/2]. Every module that touches
// frequencies goes through signed_frequency() below.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wh::fft {

using cplx = std::complex<double>;

void forward(std::span<cplx> data);
void inverse(std::span<cplx> data);

/// Row-major 2-D transforms of an n0 x n1 array.
void forward_2d(std::span<cplx> data, std::size_t n0, std::size_t n1);
void inverse_2d(std::span<cplx> data, std::size_t n0, std::size_t n1);

/// Signed DFT index of bin k: k for k <= N/2, k - N above. The Nyquist bin of
/// an even-length transform maps to +N/2.
long signed_index(std::size_t k, std::size_t n) noexcept;

/// Angular frequency of bin k for sample spacing dt: 2 pi signed_index(k) / (N dt).
double signed_frequency(std::size_t k, std::size_t n, double dt) noexcept;

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n) noexcept;

}  // namespace wh::fft
