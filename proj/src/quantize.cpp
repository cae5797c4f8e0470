#include "wh/quantize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wh/numerics.hpp"
#include "wh/parallel.hpp"
#include "wh/simd/kernels.hpp"

namespace wh {

OperatorKernel::OperatorKernel(Grid1D grid)
    : time_grid(grid), entries(grid.count() * grid.count()), quad_weight(grid.step()) {}

SampledSignal OperatorKernel::apply(const SampledSignal& s) const {
  if (!(s.grid == time_grid)) throw std::invalid_argument("OperatorKernel::apply: signal grid differs from kernel grid");
  const std::size_t n = size();
  SampledSignal out(time_grid);
  for (std::size_t i = 0; i < n; ++i)
    out.values[i] = quad_weight * simd::dotu(std::span<const cplx>(entries).subspan(i * n, n), s.values);
  return out;
}

SampledSignal gaussian_probe_signal(double width, const Grid1D& grid, Warnings* warnings) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_probe_signal: width must be positive");
  SampledSignal s(grid);
  const double amp = std::pow(kPi * width, -0.25);
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double t = grid.point(i);
    s.values[i] = amp * std::exp(-t * t / (2.0 * width));
  }
  if (edge_exceeds(s.values, 1e-10)) warn(warnings, "gaussian_probe_signal: probe is clipped by the time grid");
  return s;
}

namespace {

void require_positive(double a, double r) {
  if (!(a > 0.0) || !(r > 0.0)) throw std::invalid_argument("probe widths a and r must be positive");
}

void require_unit_mass(const Distribution& w, const char* what) {
  const double m = w.mass();
  if (!(std::abs(m - 1.0) <= 1e-6))
    throw std::invalid_argument(std::string(what) + ": w must be normalized to unit mass (got " + std::to_string(m) + ")");
  for (double v : w.values)
    if (v < 0.0) throw std::invalid_argument(std::string(what) + ": w must be non-negative");
}

double omega_edge_max(const Distribution& w) {
  const std::size_t nw = w.grid.omega.count(), nb = w.grid.b.count();
  double m = 0.0;
  for (std::size_t ib = 0; ib < nb; ++ib) m = std::max({m, w.at(0, ib), w.at(nw - 1, ib)});
  return m;
}

}  // namespace

double par_kernel_value(double a, double r, double omega, double b) {
  require_positive(a, r);
  const double s = r + a;
  return 2.0 * std::sqrt(r * a) / s * std::exp(-(r * a / s) * omega * omega) * std::exp(-b * b / s);
}

double par_kernel_printed_value(double a, double r, double omega, double b) {
  require_positive(a, r);
  const double s = r + a;
  return 2.0 * std::sqrt(kPi * a) / s * std::exp(-(r * a / s) * omega * omega) * std::exp(-b * b / s);
}

Distribution par_kernel_closed(double a, double r, const PhaseSpaceGrid& grid) {
  require_positive(a, r);
  Distribution p(grid);
  for (std::size_t k = 0; k < grid.omega.count(); ++k)
    for (std::size_t j = 0; j < grid.b.count(); ++j) p.at(k, j) = par_kernel_value(a, r, grid.omega.point(k), grid.b.point(j));
  return p;
}

double par_kernel_quadrature(const SampledSignal& psi_a, const SampledSignal& psi_r, double omega, double b,
                             Warnings* warnings) {
  if (!(psi_a.grid == psi_r.grid)) throw std::invalid_argument("par_kernel_quadrature: probes live on different grids");
  if (edge_exceeds(psi_a.values, 1e-10) || edge_exceeds(psi_r.values, 1e-10))
    warn(warnings, "par_kernel_quadrature: probe does not decay at the grid edges");
  const Grid1D& t = psi_a.grid;
  const auto moved = periodic_shift(psi_a.values, t.step(), -b);
  std::vector<cplx> f(t.count());
  for (std::size_t i = 0; i < t.count(); ++i) f[i] = std::polar(1.0, -omega * t.point(i)) * moved[i];
  return std::norm(t.step() * simd::dotc(psi_r.values, f));
}

Distribution portrait(const Distribution& w, double a, double r, Warnings* warnings) {
  require_unit_mass(w, "portrait");
  const Distribution p = par_kernel_closed(a, r, w.grid);
  if (p.mass() < 1.0 - 1e-8) warn(warnings, "portrait: the grid holds less than 1 - 1e-8 of the P^{ar} mass");
  Distribution h = grid_convolve(w, p, warnings);
  // Below this the FFT round-off dominates; flatten it so it cannot pose as minima.
  const double floor = 1e-13 * h.max_value();
  for (auto& v : h.values)
    if (v < floor) v = 0.0;
  return h;
}

OperatorKernel quantize_to_kernel(const Distribution& w, const SampledSignal& psi_a, Warnings* warnings) {
  require_unit_mass(w, "quantize_to_kernel");
  const Grid1D& t = psi_a.grid;
  const auto& og = w.grid.omega;
  const auto& bg = w.grid.b;
  const std::size_t n = t.count(), nw = og.count(), nb = bg.count();
  const double dt = t.step();

  if (omega_edge_max(w) > 1e-10 * w.max_value())
    warn(warnings, "quantize_to_kernel: w does not decay along omega; the partial Fourier transform is truncated");
  if (t.period() > kTwoPi / og.step())
    warn(warnings, "quantize_to_kernel: omega step too coarse for the time window; partial Fourier transform aliases");
  if (edge_exceeds(psi_a.values, 1e-10)) warn(warnings, "quantize_to_kernel: probe does not decay at the grid edges");

  // F[b][d + n - 1] = sum_k d omega w(omega_k, b) e^{-i omega_k d dt}
  const std::size_t nd = 2 * n - 1;
  std::vector<cplx> ph(nd * nw);
  for (std::size_t e = 0; e < nd; ++e) {
    const double d = (static_cast<double>(e) - static_cast<double>(n - 1)) * dt;
    for (std::size_t k = 0; k < nw; ++k) ph[e * nw + k] = std::polar(1.0, -og.point(k) * d);
  }
  std::vector<cplx> F(nb * nd);
  std::vector<cplx> psi_b(nb * n);
  parallel_for(nb, [&](std::size_t ib) {
    std::vector<cplx> col(nw);
    for (std::size_t k = 0; k < nw; ++k) col[k] = og.step() * w.at(k, ib);
    for (std::size_t e = 0; e < nd; ++e) F[ib * nd + e] = simd::dotu(std::span<const cplx>(ph).subspan(e * nw, nw), col);
    const auto shifted = periodic_shift(psi_a.values, dt, bg.point(ib));
    std::copy(shifted.begin(), shifted.end(), psi_b.begin() + static_cast<std::ptrdiff_t>(ib * n));
  });

  OperatorKernel K(t);
  const double scale = bg.step() / kTwoPi;
  parallel_for(n, [&](std::size_t i) {
    std::span<cplx> row(K.entries.data() + i * n, n);
    for (std::size_t ib = 0; ib < nb; ++ib) {
      const cplx* pb = psi_b.data() + ib * n;
      if (pb[i] == cplx(0.0)) continue;
      // F_b(j - i) for j = 0..n-1 starts at offset (n - 1 - i).
      std::span<const cplx> f(F.data() + ib * nd + (n - 1 - i), n);
      simd::mulc_axpy(scale * pb[i], f, std::span<const cplx>(pb, n), row);
    }
  });
  return K;
}

OperatorKernel weyl_operator_from_weight(const PhaseSpaceFunction& w, const Grid1D& time_grid, Warnings* warnings) {
  const auto& og = w.grid.omega;
  const auto& bg = w.grid.b;
  const std::size_t n = time_grid.count(), nw = og.count(), nb = bg.count();
  const double dt = time_grid.step();

  double edge = 0.0;
  for (std::size_t ib = 0; ib < nb; ++ib) edge = std::max({edge, std::abs(w.at(0, ib)), std::abs(w.at(nw - 1, ib))});
  if (edge > 1e-10 * max_abs(w.values))
    warn(warnings, "weyl_operator_from_weight: w does not decay along omega; band is truncated");

  // rows[i * nw + k] = e^{i omega_k t_i}
  std::vector<cplx> rows(n * nw);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < nw; ++k) rows[i * nw + k] = std::polar(1.0, og.point(k) * time_grid.point(i));

  // G[b][i], and A[b][d' + n - 1] = L(-d' dt - b) for d' = j - i.
  const std::size_t nd = 2 * n - 1;
  std::vector<cplx> G(nb * n);
  std::vector<double> A(nb * nd);
  parallel_for(nb, [&](std::size_t ib) {
    const double b = bg.point(ib);
    std::vector<cplx> col(nw);
    for (std::size_t k = 0; k < nw; ++k) col[k] = og.step() * w.at(k, ib) * std::polar(1.0, -0.5 * og.point(k) * b);
    for (std::size_t i = 0; i < n; ++i) G[ib * n + i] = simd::dotu(std::span<const cplx>(rows).subspan(i * nw, nw), col);
    for (std::size_t e = 0; e < nd; ++e) {
      const double dprime = static_cast<double>(e) - static_cast<double>(n - 1);
      A[ib * nd + e] = dirichlet_interpolant(-dprime * dt - b, n, dt);
    }
  });

  OperatorKernel K(time_grid);
  const double scale = bg.step() / (kTwoPi * dt);
  parallel_for(n, [&](std::size_t i) {
    cplx* row = K.entries.data() + i * n;
    for (std::size_t ib = 0; ib < nb; ++ib) {
      const cplx g = scale * G[ib * n + i];
      const double* a = A.data() + ib * nd + (n - 1 - i);
      for (std::size_t j = 0; j < n; ++j) row[j] += g * a[j];
    }
  });
  return K;
}

DensityReport density_diagnostics(const OperatorKernel& K) {
  const std::size_t n = K.size();
  const double dt = K.quad_weight;
  DensityReport rep{};
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = K.at(i, i).real();
    im[i] = K.at(i, i).imag();
  }
  rep.trace = dt * stable_sum(re);
  rep.trace_imag = dt * stable_sum(im);

  Eigen::MatrixXcd H(n, n);
  double defect = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx kij = K.at(i, j), kji = K.at(j, i);
      defect = std::max(defect, std::abs(kij - std::conj(kji)));
      sq += std::norm(kij);
      H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.5 * dt * (kij + std::conj(kji));
    }
  rep.hermiticity_defect = defect;
  rep.purity = dt * dt * sq;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("density_diagnostics: eigenvalue solver did not converge");
  rep.min_eigenvalue = solver.eigenvalues().minCoeff();
  return rep;
}

}  // namespace wh
