// Compiled with -mavx2 -mfma. Only reached after CPUID confirms support.
// Nothing here may instantiate inline library code shared with other TUs,
// so the kernels work on raw interleaved doubles.

#include <immintrin.h>

#include "wh/simd/kernels.hpp"

namespace wh::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

// Even lanes minus odd lanes.
inline double hsub_pairs(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) - _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

// (xr, xi) * (zr, zi) for two packed complex values.
inline __m256d cmul(__m256d x, __m256d z) {
  const __m256d xr = _mm256_movedup_pd(x);
  const __m256d xi = _mm256_permute_pd(x, 0b1111);
  const __m256d zs = _mm256_permute_pd(z, 0b0101);
  return _mm256_fmaddsub_pd(xr, z, _mm256_mul_pd(xi, zs));
}

void dotu_avx2(const double* a, const double* b, std::size_t n, double* out) {
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    acc1 = _mm256_fmadd_pd(va, vb, acc1);
    acc2 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc2);
  }
  double re = hsub_pairs(acc1);
  double im = hsum(acc2);
  for (; i < n; ++i) {
    re += a[2 * i] * b[2 * i] - a[2 * i + 1] * b[2 * i + 1];
    im += a[2 * i] * b[2 * i + 1] + a[2 * i + 1] * b[2 * i];
  }
  out[0] = re;
  out[1] = im;
}

void dotc_avx2(const double* a, const double* b, std::size_t n, double* out) {
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    acc1 = _mm256_fmadd_pd(va, vb, acc1);
    acc2 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc2);
  }
  double re = hsum(acc1);
  double im = hsub_pairs(acc2);
  for (; i < n; ++i) {
    re += a[2 * i] * b[2 * i] + a[2 * i + 1] * b[2 * i + 1];
    im += a[2 * i] * b[2 * i + 1] - a[2 * i + 1] * b[2 * i];
  }
  out[0] = re;
  out[1] = im;
}

template <bool Conjugate>
void axpy_impl(const double* alpha, const double* x, const double* z, double* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha[0]);
  const __m256d ai = _mm256_set1_pd(alpha[1]);
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(x + 2 * i);
    __m256d vz = _mm256_loadu_pd(z + 2 * i);
    if constexpr (Conjugate) vz = _mm256_xor_pd(vz, conj_mask);
    const __m256d p = cmul(vx, vz);
    const __m256d q = _mm256_fmaddsub_pd(ar, p, _mm256_mul_pd(ai, _mm256_permute_pd(p, 0b0101)));
    _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(_mm256_loadu_pd(y + 2 * i), q));
  }
  for (; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double zr = z[2 * i], zi = Conjugate ? -z[2 * i + 1] : z[2 * i + 1];
    const double pr = xr * zr - xi * zi;
    const double pi = xr * zi + xi * zr;
    y[2 * i] += alpha[0] * pr - alpha[1] * pi;
    y[2 * i + 1] += alpha[0] * pi + alpha[1] * pr;
  }
}

void mul_axpy_avx2(const double* alpha, const double* x, const double* z, double* y, std::size_t n) {
  axpy_impl<false>(alpha, x, z, y, n);
}

void mulc_axpy_avx2(const double* alpha, const double* x, const double* z, double* y, std::size_t n) {
  axpy_impl<true>(alpha, x, z, y, n);
}

double sum_abs2_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(x + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1];
  return s;
}

constexpr KernelTable kAvx2{dotu_avx2, dotc_avx2, mul_axpy_avx2, mulc_axpy_avx2, sum_abs2_avx2};

}  // namespace

const KernelTable* avx2_kernels() noexcept { return &kAvx2; }

}  // namespace wh::simd
