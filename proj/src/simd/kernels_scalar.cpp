#include "wh/simd/kernels.hpp"

namespace wh::simd {
namespace {

void dotu_scalar(const double* a, const double* b, std::size_t n, double* out) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  out[0] = re;
  out[1] = im;
}

void dotc_scalar(const double* a, const double* b, std::size_t n, double* out) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  out[0] = re;
  out[1] = im;
}

void mul_axpy_scalar(const double* alpha, const double* x, const double* z, double* y, std::size_t n) {
  const double alr = alpha[0], ali = alpha[1];
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double zr = z[2 * i], zi = z[2 * i + 1];
    const double pr = xr * zr - xi * zi;
    const double pi = xr * zi + xi * zr;
    y[2 * i] += alr * pr - ali * pi;
    y[2 * i + 1] += alr * pi + ali * pr;
  }
}

void mulc_axpy_scalar(const double* alpha, const double* x, const double* z, double* y, std::size_t n) {
  const double alr = alpha[0], ali = alpha[1];
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double zr = z[2 * i], zi = -z[2 * i + 1];
    const double pr = xr * zr - xi * zi;
    const double pi = xr * zi + xi * zr;
    y[2 * i] += alr * pr - ali * pi;
    y[2 * i + 1] += alr * pi + ali * pr;
  }
}

double sum_abs2_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) acc += x[i] * x[i];
  return acc;
}

constexpr KernelTable kScalar{dotu_scalar, dotc_scalar, mul_axpy_scalar, mulc_axpy_scalar, sum_abs2_scalar};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace wh::simd
