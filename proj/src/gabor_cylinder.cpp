#include "wh/gabor_cylinder.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "wh/fft.hpp"
#include "wh/numerics.hpp"
#include "wh/parallel.hpp"

namespace wh {

namespace {

void require_circle_axis(const Grid1D& g, const char* what) {
  if (std::abs(g.start()) > 1e-15 || std::abs(g.period() - kTwoPi) > 1e-12)
    throw std::invalid_argument(std::string(what) + ": theta axis must cover [0, 2 pi) uniformly");
}

std::size_t bin(int m, std::size_t n) {
  const long ln = static_cast<long>(n);
  return static_cast<std::size_t>(((m % ln) + ln) % ln);
}

}  // namespace

CircularSignal displace_cyl(int m, double theta, const CircularSignal& phi) {
  CircularSignal out(phi.grid, periodic_shift(phi.values, phi.grid.step(), theta));
  if (m == 0) return out;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] *= std::polar(1.0, m * (phi.grid.point(i) - 0.5 * theta));
  return out;
}

cplx displacement_matrix_element(int m, double theta, int n, int nprime) {
  if (n - m != nprime) return {0.0, 0.0};
  return std::polar(1.0, (0.5 * m - n) * theta);
}

cplx truncated_trace(int m, double theta, int N) {
  if (N < 1) throw std::invalid_argument("truncated_trace: N must be at least 1");
  if (m != 0) return {0.0, 0.0};
  double acc = 1.0;
  for (int n = 1; n <= N; ++n) acc += 2.0 * std::cos(n * theta);
  return {acc, 0.0};
}

CircularSignal von_mises(double lambda, std::size_t n_gamma) {
  if (!(lambda > 0.0 && lambda <= kVonMisesMaxLambda))
    throw std::invalid_argument("von_mises: lambda must lie in (0, 50]");
  CircularSignal out(n_gamma);
  const double norm = 1.0 / std::sqrt(kTwoPi * bessel_i(0, 2.0 * lambda));
  for (std::size_t i = 0; i < n_gamma; ++i) out.values[i] = norm * std::exp(lambda * std::cos(out.grid.point(i)));
  return out;
}

cplx reproducing_kernel(double lambda, int m, double theta, int mprime, double thetaprime) {
  if (!(lambda > 0.0 && lambda <= kVonMisesMaxLambda))
    throw std::invalid_argument("reproducing_kernel: lambda must lie in (0, 50]");
  if (m == mprime && theta == thetaprime) return {1.0, 0.0};
  const int k = std::abs(m - mprime);
  const double x = 2.0 * lambda * std::cos(0.5 * (theta - thetaprime));
  double ik = bessel_i(k, std::abs(x));
  if (x < 0.0 && k % 2 == 1) ik = -ik;
  return std::polar(ik / bessel_i(0, 2.0 * lambda), 0.5 * (mprime * theta - m * thetaprime));
}

CylCoefficients::CylCoefficients(int max_m, Grid1D theta_axis)
    : M(max_m), theta(theta_axis), values(static_cast<std::size_t>(2 * max_m + 1) * theta_axis.count()) {
  if (max_m < 0) throw std::invalid_argument("CylCoefficients: M must be non-negative");
}

double CylCoefficients::energy() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return acc * theta.step() / kTwoPi;
}

double CylCoefficients::edge_energy() const {
  if (M == 0) return energy();
  double acc = 0.0;
  for (std::size_t j = 0; j < theta.count(); ++j) acc += std::norm(at(M, j)) + std::norm(at(-M, j));
  return acc * theta.step() / kTwoPi;
}

CylCoefficients cyl_gabor_transform(const CircularSignal& psi, const CircularSignal& phi, int M, const Grid1D& theta_axis) {
  if (!(psi.grid == phi.grid)) throw std::invalid_argument("cyl_gabor_transform: window and signal grids differ");
  require_circle_axis(theta_axis, "cyl_gabor_transform");
  const std::size_t n = phi.grid.count();
  if (M < 0 || static_cast<std::size_t>(2 * M + 1) > n)
    throw std::invalid_argument("cyl_gabor_transform: need 0 <= M and 2M+1 <= n_gamma");
  const double dg = phi.grid.step();
  CylCoefficients out(M, theta_axis);
  parallel_for(theta_axis.count(), [&](std::size_t j) {
    const double th = theta_axis.point(j);
    auto buf = periodic_shift(psi.values, dg, th);
    for (std::size_t i = 0; i < n; ++i) buf[i] = std::conj(buf[i]) * phi.values[i];
    fft::forward(buf);
    for (int m = -M; m <= M; ++m) out.at(m, j) = dg * buf[bin(m, n)] * std::polar(1.0, 0.5 * m * th);
  });
  return out;
}

CircularSignal cyl_reconstruct(const CircularSignal& psi, const CylCoefficients& S, Warnings* warnings) {
  require_circle_axis(S.theta, "cyl_reconstruct");
  const std::size_t n = psi.grid.count();
  if (static_cast<std::size_t>(2 * S.M + 1) > n) throw std::invalid_argument("cyl_reconstruct: 2M+1 exceeds n_gamma");
  const std::size_t nt = S.theta.count();
  std::vector<cplx> parts(nt * n);
  parallel_for(nt, [&](std::size_t j) {
    const double th = S.theta.point(j);
    std::vector<cplx> buf(n);
    for (int m = -S.M; m <= S.M; ++m) buf[bin(m, n)] += S.at(m, j) * std::polar(1.0, -0.5 * m * th);
    fft::inverse(buf);
    const auto psi_t = periodic_shift(psi.values, psi.grid.step(), th);
    for (std::size_t i = 0; i < n; ++i) parts[j * n + i] = buf[i] * psi_t[i];
  });
  CircularSignal out(psi.grid, std::vector<cplx>(n));
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t i = 0; i < n; ++i) out.values[i] += parts[j * n + i];
  const double w = S.theta.step() / kTwoPi;
  for (auto& v : out.values) v *= w;

  const double total = S.energy();
  if (total > 0.0 && S.edge_energy() > 1e-10 * total)
    warn(warnings, "cyl_reconstruct: coefficients at |m| = M carry more than 1e-10 of the energy; raise M");
  return out;
}

int choose_truncation_order(const CircularSignal& psi, const CircularSignal& phi, double tol) {
  if (!(psi.grid == phi.grid)) throw std::invalid_argument("choose_truncation_order: grids differ");
  const std::size_t n = psi.grid.count();
  std::vector<cplx> a(psi.values), b(phi.values);
  fft::forward(a);
  fft::forward(b);
  std::vector<double> bound(n, 0.0);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k) bound[m] += std::abs(a[k]) * std::abs(b[(m + k) % n]);
  double total = 0.0;
  for (double v : bound) total += v * v;
  const int cap = static_cast<int>(n / 2) - 1;
  for (int M = 0; M < cap; ++M) {
    double tail = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(fft::signed_index(k, n)) > M) tail += bound[k] * bound[k];
    if (tail < tol * total) return M;
  }
  return cap;
}

}  // namespace wh
