#pragma once

#include <span>
#include <vector>

#include "wh/types.hpp"

namespace wh {

inline constexpr int kBesselMaxOrder = 64;
inline constexpr double kBesselMaxArgument = 700.0;

/// Modified Bessel function of the first kind I_order(x) for integer order.
/// Power series for x <= 30, normalized Miller downward recurrence above.
/// Throws std::domain_error for x < 0, x > 700, or order outside [0, 64].
double bessel_i(int order, double x);

/// Delta gamma * sum of samples on a uniform grid covering [0, 2 pi) once.
cplx periodic_trapezoid(std::span<const cplx> values);
double periodic_trapezoid(std::span<const double> values);

/// Edge criterion shared by shift, convolution and transform routines:
/// true when an end sample exceeds rel_tol * max |v|.
bool edge_exceeds(std::span<const cplx> v, double rel_tol);

/// Samples of t -> s(t - shift) treating the grid as one period of a periodic
/// band-limited function (discrete Fourier phase ramp, Nyquist bin weighted by
/// cos). Integer multiples of the step reduce to an exact index rotation.
std::vector<cplx> periodic_shift(std::span<const cplx> values, double step, double shift);

/// Band-limited translate of a sampled signal. Warns when the input does not
/// decay to 1e-10 of its peak at the grid ends (wrap-around contamination).
SampledSignal fractional_shift(const SampledSignal& signal, double shift, Warnings* warnings = nullptr);

/// Periodic band-limited interpolation kernel of an n-point grid with spacing
/// step, L(x) = sin(pi x / step) cot(pi x / (n step)) / n for even n; L(k step) = delta_k0.
double dirichlet_interpolant(double x, std::size_t n, double step);

/// h(x) = int f(x') g(x - x') d omega' d b' / 2 pi on the common grid, by
/// zero-padded FFT. g is read as a function of the offset x - x', so the grid
/// must have a node at the origin on both axes. Warns on boundary leakage.
Distribution grid_convolve(const Distribution& f, const Distribution& g, Warnings* warnings = nullptr);

struct LocalMinimum {
  double omega;
  double b;
  double value;
};

/// Interior nodes strictly below all 8 neighbours and below rel_threshold * max,
/// refined by a least-squares quadratic over the 3x3 neighbourhood, sorted by value.
std::vector<LocalMinimum> find_local_minima(const Distribution& w, double rel_threshold);

}  // namespace wh
