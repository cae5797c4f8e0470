#pragma once

#include <string>
#include <vector>

#include "wh/types.hpp"

namespace wh {

/// Unit-norm window. The constructor rejects norms off by more than 1e-10.
struct Probe {
  SampledSignal signal;
  std::string id;

  Probe(SampledSignal s, std::string identifier);
};

/// Gabor coefficients S(omega, b) on a PhaseSpaceGrid, omega-major.
struct TFCoefficients {
  PhaseSpaceGrid grid;
  std::vector<cplx> values;
  std::string probe_id;

  cplx at(std::size_t io, std::size_t ib) const { return values[grid.index(io, ib)]; }
  /// sum |S|^2 d omega d b / 2 pi.
  double energy() const;
};

/// Time axis [-20, 20) with 1024 samples.
Grid1D default_time_grid();
/// (omega, b) in [-16, 16)^2 with 256 x 256 nodes.
PhaseSpaceGrid default_tf_grid();

/// (pi w)^{-1/4} exp(-(t-center)^2 / (2w)) exp(i freq t).
SampledSignal gaussian_signal(const Grid1D& grid, double width = 1.0, double center = 0.0, double freq = 0.0);
/// Normalized e^{-(t-3)^2/2} + e^{-(t+3)^2/2} e^{5it}.
SampledSignal two_bump_signal(const Grid1D& grid);
/// Normalized e^{-t^2/8} e^{0.5 i t^2}.
SampledSignal chirp_signal(const Grid1D& grid);
/// Normalized t e^{-t^2/2}.
SampledSignal hermite1_signal(const Grid1D& grid);
/// One of "gaussian", "two-bump", "chirp", "hermite1". Throws on other names.
SampledSignal named_test_signal(const std::string& name, const Grid1D& grid);

/// t -> e^{i omega (t - b/2)} s(t - b), with the translation done spectrally.
SampledSignal displace(double omega, double b, const SampledSignal& s, Warnings* warnings = nullptr);

/// S(omega, b) = dt sum_n e^{-i omega t_n} conj(psi(t_n - b)) s(t_n). For each b the
/// omega slice is a direct DFT of conj(psi(. - b)) s against precomputed rows
/// e^{-i omega_k t_n}, so arbitrary omega grids are allowed.
TFCoefficients gabor_transform(const Probe& probe, const SampledSignal& s, const PhaseSpaceGrid& grid,
                               Warnings* warnings = nullptr);

/// s(t) = sum S(omega, b) e^{i omega t} psi(t - b) d omega d b / 2 pi. Per-b terms
/// are summed in b order, independent of the worker count. Warns when the output
/// energy misses the coefficient energy by more than 1%.
SampledSignal gabor_reconstruct(const Probe& probe, const TFCoefficients& S, Warnings* warnings = nullptr);

enum class CovariancePhase {
  derived,  // e^{-i(omega - omega0/2) b0}, what direct substitution gives
  printed,  // e^{+i(omega - omega0/2) b0}
};

/// max over the grid of |S[D(omega0,b0)s](omega,b) - phase * S[s](omega-omega0, b-b0)|.
/// The shifted transform is evaluated directly on the translated grid.
double covariance_residual(const Probe& probe, const SampledSignal& s, double omega0, double b0,
                           const PhaseSpaceGrid& grid, CovariancePhase phase = CovariancePhase::derived,
                           Warnings* warnings = nullptr);

/// Delta t * Delta omega from time-domain moments and centered-DFT frequency moments.
double uncertainty_product(const SampledSignal& s, Warnings* warnings = nullptr);

}  // namespace wh
