#pragma once

#include <vector>

#include "wh/types.hpp"

namespace wh {

/// Integral operator (rho s)(t_i) = quad_weight * sum_j K(i, j) s_j on a time grid.
struct OperatorKernel {
  Grid1D time_grid;
  std::vector<cplx> entries;  // row-major n x n
  double quad_weight;

  explicit OperatorKernel(Grid1D grid);

  std::size_t size() const noexcept { return time_grid.count(); }
  cplx at(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
  cplx& at(std::size_t i, std::size_t j) { return entries[i * size() + j]; }
  /// Applies the operator to a signal on the same grid.
  SampledSignal apply(const SampledSignal& s) const;
};

/// (pi w)^{-1/4} e^{-tau^2/(2w)}; warns when the grid clips it.
SampledSignal gaussian_probe_signal(double width, const Grid1D& grid, Warnings* warnings = nullptr);

/// P^{ar}(omega, b) = 2 sqrt(ra)/(r+a) e^{-(ra/(r+a)) omega^2} e^{-b^2/(r+a)}.
double par_kernel_value(double a, double r, double omega, double b);
/// The printed prefactor 2 sqrt(pi a)/(r+a) with the same exponentials. Not normalized.
double par_kernel_printed_value(double a, double r, double omega, double b);
Distribution par_kernel_closed(double a, double r, const PhaseSpaceGrid& grid);

/// |dt sum_tau e^{-i omega tau} conj(psi_r(tau)) psi_a(tau + b)|^2, the factorized
/// form of the double integral. psi_a(. + b) is a spectral shift.
double par_kernel_quadrature(const SampledSignal& psi_a, const SampledSignal& psi_r, double omega, double b,
                             Warnings* warnings = nullptr);

/// grid_convolve(w, P^{ar}) with values under 1e-13 of the peak (FFT round-off) set to zero.
/// Throws unless w has unit mass within 1e-6; warns when P^{ar} loses more than
/// 1e-8 of its mass outside the grid.
Distribution portrait(const Distribution& w, double a, double r, Warnings* warnings = nullptr);

/// Kernel of rho_w = int w(omega,b) D(omega,b)|psi_a><psi_a|D(omega,b)^dag d omega d b / 2 pi:
///   R(i, j) = (db/2pi) sum_b F_b(j - i) psi_b(i) conj(psi_b(j)),
///   F_b(d)  = sum_k d omega w(omega_k, b) e^{-i omega_k d dt},
/// with psi_b the spectral translate of psi_a by b. Every term is a non-negative
/// multiple of a projector, so the trace equals the discrete mass of w.
/// Throws unless w has unit mass within 1e-6. Warns when w does not decay along
/// omega or when the omega step aliases the time window.
OperatorKernel quantize_to_kernel(const Distribution& w, const SampledSignal& psi_a, Warnings* warnings = nullptr);

/// Kernel of M s(t) = sum w(omega,b) e^{i omega (t - b/2)} s(t - b) d omega d b / 2 pi, with
/// s(t - b) expanded in the periodic band-limited interpolant of the time grid:
///   K(i, j) = (1/(2 pi dt)) sum_b db L(t_i - t_j - b) G_b(i),
///   G_b(i)  = sum_k d omega w(omega_k, b) e^{i omega_k (t_i - b/2)}.
OperatorKernel weyl_operator_from_weight(const PhaseSpaceFunction& w, const Grid1D& time_grid,
                                         Warnings* warnings = nullptr);

struct DensityReport {
  double trace;                // dt sum Re K_ii
  double trace_imag;           // dt sum Im K_ii
  double hermiticity_defect;   // max |K - K^dag|
  double min_eigenvalue;       // of dt (K + K^dag)/2
  double purity;               // dt^2 sum |K_ij|^2
};

DensityReport density_diagnostics(const OperatorKernel& K);

}  // namespace wh
