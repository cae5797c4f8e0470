#include "wh/gabor_line.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wh/fft.hpp"
#include "wh/numerics.hpp"
#include "wh/parallel.hpp"
#include "wh/simd/kernels.hpp"

namespace wh {

Probe::Probe(SampledSignal s, std::string identifier) : signal(std::move(s)), id(std::move(identifier)) {
  if (std::abs(signal.norm_sq() - 1.0) > 1e-10) throw std::invalid_argument("Probe: window must have unit norm");
}

double TFCoefficients::energy() const { return simd::sum_abs2(values) * grid.cell_measure(); }

Grid1D default_time_grid() { return Grid1D::centered(20.0, 1024); }

PhaseSpaceGrid default_tf_grid() { return {Grid1D::centered(16.0, 256), Grid1D::centered(16.0, 256)}; }

namespace {

SampledSignal normalized(SampledSignal s) {
  const double n = std::sqrt(s.norm_sq());
  if (!(n > 0.0)) throw std::invalid_argument("test signal vanishes on the grid");
  for (auto& v : s.values) v /= n;
  return s;
}

template <class F>
SampledSignal sample(const Grid1D& grid, F f) {
  SampledSignal s(grid);
  for (std::size_t i = 0; i < grid.count(); ++i) s.values[i] = f(grid.point(i));
  return s;
}

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": probe and signal live on different time grids");
}

// rows[k * n + i] = e^{sign i omega_k t_i}
std::vector<cplx> phase_rows(const Grid1D& omega, const Grid1D& t, double sign) {
  const std::size_t nk = omega.count(), n = t.count();
  std::vector<cplx> rows(nk * n);
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t i = 0; i < n; ++i) rows[k * n + i] = std::polar(1.0, sign * omega.point(k) * t.point(i));
  return rows;
}

}  // namespace

SampledSignal gaussian_signal(const Grid1D& grid, double width, double center, double freq) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_signal: width must be positive");
  const double amp = std::pow(kPi * width, -0.25);
  return sample(grid, [&](double t) {
    const double u = t - center;
    return amp * std::exp(-u * u / (2.0 * width)) * std::polar(1.0, freq * t);
  });
}

SampledSignal two_bump_signal(const Grid1D& grid) {
  return normalized(sample(grid, [](double t) {
    return cplx(std::exp(-(t - 3.0) * (t - 3.0) / 2.0)) + std::exp(-(t + 3.0) * (t + 3.0) / 2.0) * std::polar(1.0, 5.0 * t);
  }));
}

SampledSignal chirp_signal(const Grid1D& grid) {
  return normalized(sample(grid, [](double t) { return std::exp(-t * t / 8.0) * std::polar(1.0, 0.5 * t * t); }));
}

SampledSignal hermite1_signal(const Grid1D& grid) {
  return normalized(sample(grid, [](double t) { return cplx(t * std::exp(-t * t / 2.0)); }));
}

SampledSignal named_test_signal(const std::string& name, const Grid1D& grid) {
  if (name == "gaussian") return gaussian_signal(grid);
  if (name == "two-bump") return two_bump_signal(grid);
  if (name == "chirp") return chirp_signal(grid);
  if (name == "hermite1") return hermite1_signal(grid);
  throw std::invalid_argument("unknown test signal '" + name + "'");
}

SampledSignal displace(double omega, double b, const SampledSignal& s, Warnings* warnings) {
  SampledSignal out = fractional_shift(s, b, warnings);
  if (omega == 0.0) return out;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] *= std::polar(1.0, omega * (s.grid.point(i) - 0.5 * b));
  return out;
}

TFCoefficients gabor_transform(const Probe& probe, const SampledSignal& s, const PhaseSpaceGrid& grid,
                               Warnings* warnings) {
  require_same_grid(probe.signal.grid, s.grid, "gabor_transform");
  if (edge_exceeds(s.values, 1e-10)) warn(warnings, "gabor_transform: signal does not decay at the time-grid edges");
  const Grid1D& t = s.grid;
  const std::size_t n = t.count(), nw = grid.omega.count(), nb = grid.b.count();
  const auto rows = phase_rows(grid.omega, t, -1.0);
  const double dt = t.step();

  TFCoefficients out{grid, std::vector<cplx>(grid.size()), probe.id};
  parallel_for(nb, [&](std::size_t ib) {
    const auto psi_b = periodic_shift(probe.signal.values, dt, grid.b.point(ib));
    std::vector<cplx> prod(n);
    for (std::size_t i = 0; i < n; ++i) prod[i] = std::conj(psi_b[i]) * s.values[i];
    for (std::size_t k = 0; k < nw; ++k)
      out.values[grid.index(k, ib)] = dt * simd::dotu(std::span(rows).subspan(k * n, n), prod);
  });
  return out;
}

SampledSignal gabor_reconstruct(const Probe& probe, const TFCoefficients& S, Warnings* warnings) {
  const Grid1D& t = probe.signal.grid;
  const auto& grid = S.grid;
  const std::size_t n = t.count(), nw = grid.omega.count(), nb = grid.b.count();
  // rows[i * nw + k] = e^{i omega_k t_i}
  std::vector<cplx> rows(n * nw);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < nw; ++k) rows[i * nw + k] = std::polar(1.0, grid.omega.point(k) * t.point(i));

  std::vector<cplx> parts(nb * n);
  parallel_for(nb, [&](std::size_t ib) {
    std::vector<cplx> col(nw);
    for (std::size_t k = 0; k < nw; ++k) col[k] = S.values[grid.index(k, ib)];
    const auto psi_b = periodic_shift(probe.signal.values, t.step(), grid.b.point(ib));
    for (std::size_t i = 0; i < n; ++i)
      parts[ib * n + i] = simd::dotu(std::span<const cplx>(rows).subspan(i * nw, nw), col) * psi_b[i];
  });

  SampledSignal out(t);
  const double w = grid.cell_measure();
  for (std::size_t ib = 0; ib < nb; ++ib)
    for (std::size_t i = 0; i < n; ++i) out.values[i] += parts[ib * n + i];
  for (auto& v : out.values) v *= w;

  const double e_in = S.energy();
  if (e_in > 0.0 && std::abs(out.norm_sq() - e_in) > 0.01 * e_in)
    warn(warnings, "gabor_reconstruct: reconstructed energy differs from coefficient energy by more than 1%; grid may not cover the signal support");
  return out;
}

double covariance_residual(const Probe& probe, const SampledSignal& s, double omega0, double b0,
                           const PhaseSpaceGrid& grid, CovariancePhase phase, Warnings* warnings) {
  const SampledSignal moved = displace(omega0, b0, s, warnings);
  const auto lhs = gabor_transform(probe, moved, grid, warnings);
  const PhaseSpaceGrid shifted{Grid1D(grid.omega.start() - omega0, grid.omega.step(), grid.omega.count()),
                               Grid1D(grid.b.start() - b0, grid.b.step(), grid.b.count())};
  const auto rhs = gabor_transform(probe, s, shifted, warnings);
  const double sign = phase == CovariancePhase::derived ? -1.0 : 1.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.omega.count(); ++k) {
    const cplx ph = std::polar(1.0, sign * (grid.omega.point(k) - 0.5 * omega0) * b0);
    for (std::size_t ib = 0; ib < grid.b.count(); ++ib)
      worst = std::max(worst, std::abs(lhs.at(k, ib) - ph * rhs.at(k, ib)));
  }
  return worst;
}

double uncertainty_product(const SampledSignal& s, Warnings* warnings) {
  const Grid1D& t = s.grid;
  const std::size_t n = t.count();
  if (edge_exceeds(s.values, 1e-8)) warn(warnings, "uncertainty_product: signal decays slowly; time moments may diverge");

  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = std::norm(s.values[i]);
  auto moments = [](const std::vector<double>& weight, auto coord) {
    std::vector<double> w1(weight.size()), w2(weight.size());
    for (std::size_t i = 0; i < weight.size(); ++i) {
      w1[i] = weight[i] * coord(i);
      w2[i] = weight[i] * coord(i) * coord(i);
    }
    const double m0 = stable_sum(weight);
    const double mean = stable_sum(w1) / m0;
    return stable_sum(w2) / m0 - mean * mean;
  };
  const double var_t = moments(p, [&](std::size_t i) { return t.point(i); });

  std::vector<cplx> spectrum(s.values);
  fft::forward(spectrum);
  std::vector<double> q(n);
  for (std::size_t k = 0; k < n; ++k) q[k] = std::norm(spectrum[k]);
  if (q[n / 2] > 1e-16 * *std::max_element(q.begin(), q.end()))
    warn(warnings, "uncertainty_product: spectrum does not decay before the Nyquist frequency");
  const double var_w = moments(q, [&](std::size_t k) { return fft::signed_frequency(k, n, t.step()); });
  return std::sqrt(std::max(0.0, var_t) * std::max(0.0, var_w));
}

}  // namespace wh
