#pragma once

#include <optional>
#include <vector>

#include "wh/numerics.hpp"
#include "wh/quantize.hpp"
#include "wh/types.hpp"

namespace wh {

/// Planar zeros z_i = b_i + i omega_i, multiplicities allowed.
struct ZeroSet {
  std::vector<cplx> points;

  /// {0} together with the fifth roots of unity.
  static ZeroSet pentagon();
};

struct StellarParams {
  double s = 0.945;
  double probe_a = 2.0;
  double probe_r = 2.0;
  PhaseSpaceGrid grid{Grid1D::centered(32.0, 512), Grid1D::centered(32.0, 512)};
  /// Time axis for quantize_stellar.
  Grid1D time_grid{Grid1D::centered(20.0, 512)};
  double rel_threshold = 1e-2;
  double match_cutoff = 0.5;
  /// Minima closer than this to the origin are left out of the symmetry residual.
  double origin_radius = 0.25;
  int symmetry_order = 5;
};

/// e^{-rate_b b^2 - rate_omega omega^2} |prod (z - z_i)|^2 at z = b + i omega, unnormalized.
double stellar_weight(const ZeroSet& zeros, double rate_b, double rate_omega, double b, double omega);

struct StellarDistribution {
  Distribution w;
  double normalization;  // the constant N dividing the unnormalized weight
  double tail_fraction;  // mass share found outside the grid on a doubled range
};

/// w_{s,n} = e^{-(1-s)b^2 - (1/s-1)omega^2} |p_n(b + i omega)|^2 / N with unit mass under
/// d omega d b / 2 pi. Throws std::invalid_argument unless 0 < s < 1 and
/// std::domain_error when more than 1e-6 of the mass lies outside the grid;
/// warns above 1e-8.
StellarDistribution stellar_distribution(const ZeroSet& zeros, double s, const PhaseSpaceGrid& grid,
                                         Warnings* warnings = nullptr);

inline constexpr int kHermiteMaxOrder = 30;

/// Physicists' Hermite polynomial at a complex point by the three-term recurrence.
cplx hermite_h(int n, cplx z);

/// b_n(s) = (pi sqrt(s)/(1-s)) (2(1+s)/(1-s))^n n!.
double hermite_norm(int n, double s);

/// int int H_m(b+i omega) conj(H_n(b+i omega)) e^{-(1-s)b^2-(1/s-1)omega^2} db d omega by
/// the grid Riemann sum. m, n <= 8. Throws std::domain_error when the integrand at
/// the boundary exceeds 1e-6 of its peak.
cplx hermite_gram(int m, int n, double s, const PhaseSpaceGrid& grid, Warnings* warnings = nullptr);

struct ZeroMatch {
  cplx zero;
  std::optional<LocalMinimum> minimum;
  double displacement;  // NaN when unmatched
};

/// Greedy nearest-neighbour pairing of zeros with minima within cutoff.
/// unmatched receives the minima left over.
std::vector<ZeroMatch> match_zeros(const ZeroSet& zeros, const std::vector<LocalMinimum>& minima, double cutoff,
                                   std::vector<LocalMinimum>* unmatched = nullptr);

/// Hausdorff distance between a planar point set and its rotation by 2 pi / k.
/// Infinity for an empty set.
double rotation_residual(const std::vector<cplx>& points, int k);

struct StellarReport {
  StellarDistribution w;
  Distribution portrait;
  std::vector<LocalMinimum> minima_w;
  std::vector<LocalMinimum> minima_portrait;
  std::vector<ZeroMatch> matches_w;
  std::vector<ZeroMatch> matches_portrait;
  std::vector<LocalMinimum> unmatched_portrait;
  std::size_t matched_count = 0;
  double max_displacement = 0.0;  // over matched portrait minima
  double symmetry_residual_w = 0.0;
  double symmetry_residual_portrait = 0.0;
};

StellarReport stellar_experiment(const ZeroSet& zeros, const StellarParams& params, Warnings* warnings = nullptr);

struct QuantizedStellar {
  OperatorKernel kernel;
  DensityReport diagnostics;
};

/// quantize_to_kernel of w_{s,n} on params.grid with the Gaussian probe of width
/// params.probe_a on params.time_grid, followed by density_diagnostics.
QuantizedStellar quantize_stellar(const ZeroSet& zeros, const StellarParams& params, Warnings* warnings = nullptr);

}  // namespace wh
