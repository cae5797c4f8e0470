#include <atomic>
#include <stdexcept>

#include "wh/simd/kernels.hpp"

namespace wh::simd {

#ifndef WH_HAVE_AVX2
const KernelTable* avx2_kernels() noexcept { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) noexcept {
  if (b == Backend::avx2 && avx2_kernels() != nullptr && cpu_has_avx2()) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{table_for(detected_backend())};
  return table;
}

const KernelTable& k() noexcept { return *current().load(std::memory_order_relaxed); }

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd kernel: operand lengths differ");
}

const double* raw(std::span<const cplx> v) noexcept { return reinterpret_cast<const double*>(v.data()); }
double* raw(std::span<cplx> v) noexcept { return reinterpret_cast<double*>(v.data()); }

}  // namespace

Backend detected_backend() noexcept {
  return (avx2_kernels() != nullptr && cpu_has_avx2()) ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() noexcept {
  return current().load() == &scalar_kernels() ? Backend::scalar : Backend::avx2;
}

Backend set_backend(Backend b) noexcept {
  current().store(table_for(b));
  return active_backend();
}

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

cplx dotu(std::span<const cplx> a, std::span<const cplx> b) {
  require_same(a.size(), b.size());
  double out[2];
  k().dotu(raw(a), raw(b), a.size(), out);
  return {out[0], out[1]};
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  require_same(a.size(), b.size());
  double out[2];
  k().dotc(raw(a), raw(b), a.size(), out);
  return {out[0], out[1]};
}

void mul_axpy(cplx alpha, std::span<const cplx> x, std::span<const cplx> z, std::span<cplx> y) {
  require_same(x.size(), y.size());
  require_same(z.size(), y.size());
  const double al[2] = {alpha.real(), alpha.imag()};
  k().mul_axpy(al, raw(x), raw(z), raw(y), y.size());
}

void mulc_axpy(cplx alpha, std::span<const cplx> x, std::span<const cplx> z, std::span<cplx> y) {
  require_same(x.size(), y.size());
  require_same(z.size(), y.size());
  const double al[2] = {alpha.real(), alpha.imag()};
  k().mulc_axpy(al, raw(x), raw(z), raw(y), y.size());
}

double sum_abs2(std::span<const cplx> x) { return k().sum_abs2(raw(x), x.size()); }

}  // namespace wh::simd
