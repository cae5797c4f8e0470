#pragma once

#include <vector>

#include "wh/types.hpp"

namespace wh {

/// gamma -> e^{-i m theta/2} e^{i m gamma} phi(gamma - theta), rotation done spectrally.
CircularSignal displace_cyl(int m, double theta, const CircularSignal& phi);

/// <e_n | D(m,theta) | e_n'> with e_n = e^{i n gamma}/sqrt(2 pi):
/// e^{i(m/2 - n) theta} when n - m = n', else 0.
cplx displacement_matrix_element(int m, double theta, int n, int nprime);

/// sum_{|n| <= N} <e_n|D(m,theta)|e_n>. Exactly 0 for m != 0, the Dirichlet
/// kernel 1 + 2 sum_{n=1}^N cos(n theta) for m = 0.
cplx truncated_trace(int m, double theta, int N);

inline constexpr double kVonMisesMaxLambda = 50.0;

/// gamma -> e^{lambda cos gamma} / sqrt(2 pi I_0(2 lambda)) on n_gamma nodes. lambda in (0, 50].
CircularSignal von_mises(double lambda, std::size_t n_gamma);

/// <psi_{m,theta} | psi_{m',theta'}> for the von Mises window:
/// e^{i(m' theta - m theta')/2} I_{m-m'}(2 lambda cos((theta - theta')/2)) / I_0(2 lambda),
/// with theta, theta' used as given (no wrapping).
cplx reproducing_kernel(double lambda, int m, double theta, int mprime, double thetaprime);

/// S(m, theta) for |m| <= M on a theta axis covering [0, 2 pi). Storage is m-major:
/// values[(m + M) * n_theta + j].
struct CylCoefficients {
  int M;
  Grid1D theta;
  std::vector<cplx> values;

  CylCoefficients(int max_m, Grid1D theta_axis);

  cplx at(int m, std::size_t j) const { return values[index(m, j)]; }
  cplx& at(int m, std::size_t j) { return values[index(m, j)]; }
  std::size_t index(int m, std::size_t j) const {
    return static_cast<std::size_t>(m + M) * theta.count() + j;
  }
  /// (1/2 pi) sum_m sum_j |S|^2 d theta.
  double energy() const;
  /// Energy carried by the two outermost slices |m| = M.
  double edge_energy() const;
};

/// S(m, theta) = <psi_{m,theta} | phi>. For each theta one FFT of conj(psi(. - theta)) phi
/// yields every m; requires 2M + 1 <= n_gamma.
CylCoefficients cyl_gabor_transform(const CircularSignal& psi, const CircularSignal& phi, int M, const Grid1D& theta_axis);

/// phi(gamma) = (1/2 pi) sum_m int S(m,theta) psi_{m,theta}(gamma) d theta. Warns when
/// the |m| = M slices carry more than 1e-10 of the coefficient energy.
CircularSignal cyl_reconstruct(const CircularSignal& psi, const CylCoefficients& S, Warnings* warnings = nullptr);

/// Smallest M whose m-tail of the coefficient bound sum_k |psi_k| |phi_{m+k}| carries
/// less than tol of its energy, capped at n_gamma/2 - 1.
int choose_truncation_order(const CircularSignal& psi, const CircularSignal& phi, double tol = 1e-12);

}  // namespace wh
