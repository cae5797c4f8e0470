#pragma once

// Complex inner-loop kernels. Each has a scalar reference implementation and,
// on x86-64, an AVX2/FMA variant picked once at startup from CPUID. The two
// agree to rounding (summation order differs), which tests/unit/test_simd.cpp
// checks on random inputs including ragged tails.

#include <complex>
#include <span>
#include <string_view>

namespace wh::simd {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

/// Backend currently used by the free functions below.
Backend active_backend() noexcept;
/// Best backend the running CPU supports.
Backend detected_backend() noexcept;
/// Forces a backend. Requesting avx2 on a CPU without it falls back to scalar;
/// returns the backend actually installed.
Backend set_backend(Backend b) noexcept;
std::string_view backend_name(Backend b) noexcept;

/// sum_i a_i * b_i
cplx dotu(std::span<const cplx> a, std::span<const cplx> b);
/// sum_i conj(a_i) * b_i
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
/// y_i += alpha * x_i * z_i
void mul_axpy(cplx alpha, std::span<const cplx> x, std::span<const cplx> z, std::span<cplx> y);
/// y_i += alpha * x_i * conj(z_i)
void mulc_axpy(cplx alpha, std::span<const cplx> x, std::span<const cplx> z, std::span<cplx> y);
/// sum_i |x_i|^2
double sum_abs2(std::span<const cplx> x);

// Raw entry points, one table per backend. Pointers address interleaved (re, im) doubles.
struct KernelTable {
  void (*dotu)(const double* a, const double* b, std::size_t n, double* out);
  void (*dotc)(const double* a, const double* b, std::size_t n, double* out);
  void (*mul_axpy)(const double* alpha, const double* x, const double* z, double* y, std::size_t n);
  void (*mulc_axpy)(const double* alpha, const double* x, const double* z, double* y, std::size_t n);
  double (*sum_abs2)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels() noexcept;

}  // namespace wh::simd
