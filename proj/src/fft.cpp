#include "wh/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace wh::fft {
namespace {

// Plans are created once per shape and reused through the new-array execute
// interface. FFTW_UNALIGNED lets any std::vector buffer be passed later and keeps
// the codelet choice independent of buffer alignment, so results are reproducible.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n0, std::size_t n1, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n0, n1, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> scratch(n0 * n1);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = (n1 == 0)
                         ? fftw_plan_dft_1d(static_cast<int>(n0), buf, buf, sign, flags)
                         : fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), buf, buf, sign, flags);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

void execute(std::span<cplx> data, std::size_t n0, std::size_t n1, int sign) {
  if (data.empty()) return;
  fftw_plan plan = PlanCache::instance().get(n0, n1, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void forward(std::span<cplx> data) { execute(data, data.size(), 0, FFTW_FORWARD); }
void inverse(std::span<cplx> data) { execute(data, data.size(), 0, FFTW_BACKWARD); }

void forward_2d(std::span<cplx> data, std::size_t n0, std::size_t n1) {
  if (data.size() != n0 * n1) throw std::invalid_argument("fft: 2-D shape does not match buffer");
  execute(data, n0, n1, FFTW_FORWARD);
}

void inverse_2d(std::span<cplx> data, std::size_t n0, std::size_t n1) {
  if (data.size() != n0 * n1) throw std::invalid_argument("fft: 2-D shape does not match buffer");
  execute(data, n0, n1, FFTW_BACKWARD);
}

long signed_index(std::size_t k, std::size_t n) noexcept {
  return (2 * k <= n) ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

double signed_frequency(std::size_t k, std::size_t n, double dt) noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(signed_index(k, n)) / (static_cast<double>(n) * dt);
}

std::size_t next_pow2(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace wh::fft
