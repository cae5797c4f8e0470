#include "wh/stellar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wh/parallel.hpp"

namespace wh {

ZeroSet ZeroSet::pentagon() {
  ZeroSet z;
  z.points.emplace_back(0.0, 0.0);
  for (int k = 0; k < 5; ++k) z.points.push_back(std::polar(1.0, kTwoPi * k / 5.0));
  return z;
}

double stellar_weight(const ZeroSet& zeros, double rate_b, double rate_omega, double b, double omega) {
  const cplx z(b, omega);
  double p = 1.0;
  for (const auto& zi : zeros.points) p *= std::norm(z - zi);
  return std::exp(-rate_b * b * b - rate_omega * omega * omega) * p;
}

namespace {

void require_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
}

Distribution sample_weight(const ZeroSet& zeros, double rate_b, double rate_omega, const PhaseSpaceGrid& grid) {
  Distribution d(grid);
  parallel_for(grid.omega.count(), [&](std::size_t k) {
    const double om = grid.omega.point(k);
    for (std::size_t j = 0; j < grid.b.count(); ++j) d.at(k, j) = stellar_weight(zeros, rate_b, rate_omega, grid.b.point(j), om);
  });
  return d;
}

Grid1D doubled(const Grid1D& g) {
  return Grid1D(g.start() - static_cast<double>(g.count() / 2) * g.step(), g.step(), 2 * g.count());
}

}  // namespace

StellarDistribution stellar_distribution(const ZeroSet& zeros, double s, const PhaseSpaceGrid& grid, Warnings* warnings) {
  require_s(s);
  const double rb = 1.0 - s, ro = 1.0 / s - 1.0;
  Distribution raw = sample_weight(zeros, rb, ro, grid);
  const double inside = raw.mass();
  if (!(inside > 0.0) || !std::isfinite(inside)) throw std::domain_error("stellar_distribution: weight has no mass on the grid");

  const PhaseSpaceGrid big{doubled(grid.omega), doubled(grid.b)};
  const double total = sample_weight(zeros, rb, ro, big).mass();
  const double tail = std::max(0.0, 1.0 - inside / total);
  if (tail > 1e-6)
    throw std::domain_error("stellar_distribution: grid misses " + std::to_string(tail) + " of the mass; widen it");
  if (tail > 1e-8) warn(warnings, "stellar_distribution: grid misses more than 1e-8 of the mass");

  for (auto& v : raw.values) v /= inside;
  return {std::move(raw), inside, tail};
}

cplx hermite_h(int n, cplx z) {
  if (n < 0 || n > kHermiteMaxOrder) throw std::invalid_argument("hermite_h: order must lie in [0, 30]");
  cplx prev(1.0, 0.0);
  if (n == 0) return prev;
  cplx cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const cplx next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_norm(int n, double s) {
  require_s(s);
  if (n < 0) throw std::invalid_argument("hermite_norm: order must be non-negative");
  double v = kPi * std::sqrt(s) / (1.0 - s);
  const double q = 2.0 * (1.0 + s) / (1.0 - s);
  for (int k = 1; k <= n; ++k) v *= q * k;
  return v;
}

cplx hermite_gram(int m, int n, double s, const PhaseSpaceGrid& grid, Warnings* warnings) {
  require_s(s);
  if (m < 0 || n < 0 || m > 8 || n > 8) throw std::invalid_argument("hermite_gram: orders must lie in [0, 8]");
  const double rb = 1.0 - s, ro = 1.0 / s - 1.0;
  const std::size_t nw = grid.omega.count(), nb = grid.b.count();
  std::vector<cplx> terms(grid.size());
  double peak = 0.0, edge = 0.0;
  for (std::size_t k = 0; k < nw; ++k)
    for (std::size_t j = 0; j < nb; ++j) {
      const double b = grid.b.point(j), om = grid.omega.point(k);
      const cplx z(b, om);
      const cplx v = hermite_h(m, z) * std::conj(hermite_h(n, z)) * std::exp(-rb * b * b - ro * om * om);
      terms[grid.index(k, j)] = v;
      const double mag = std::abs(v);
      peak = std::max(peak, mag);
      if (k == 0 || j == 0 || k == nw - 1 || j == nb - 1) edge = std::max(edge, mag);
    }
  if (edge > 1e-6 * peak) throw std::domain_error("hermite_gram: integrand does not decay inside the grid");
  if (edge > 1e-12 * peak) warn(warnings, "hermite_gram: integrand is not negligible at the grid boundary");
  return stable_sum(terms) * (grid.omega.step() * grid.b.step());
}

std::vector<ZeroMatch> match_zeros(const ZeroSet& zeros, const std::vector<LocalMinimum>& minima, double cutoff,
                                   std::vector<LocalMinimum>* unmatched) {
  struct Pair {
    double d;
    std::size_t zi, mi;
  };
  std::vector<Pair> pairs;
  for (std::size_t zi = 0; zi < zeros.points.size(); ++zi)
    for (std::size_t mi = 0; mi < minima.size(); ++mi) {
      const double d = std::abs(cplx(minima[mi].b, minima[mi].omega) - zeros.points[zi]);
      if (d <= cutoff) pairs.push_back({d, zi, mi});
    }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ZeroMatch> out;
  for (const auto& z : zeros.points) out.push_back({z, std::nullopt, nan});
  std::vector<bool> used(minima.size(), false);
  for (const auto& p : pairs) {
    if (out[p.zi].minimum || used[p.mi]) continue;
    out[p.zi].minimum = minima[p.mi];
    out[p.zi].displacement = p.d;
    used[p.mi] = true;
  }
  if (unmatched != nullptr) {
    unmatched->clear();
    for (std::size_t mi = 0; mi < minima.size(); ++mi)
      if (!used[mi]) unmatched->push_back(minima[mi]);
  }
  return out;
}

double rotation_residual(const std::vector<cplx>& points, int k) {
  if (k < 1) throw std::invalid_argument("rotation_residual: k must be positive");
  if (points.empty()) return std::numeric_limits<double>::infinity();
  const cplx rot = std::polar(1.0, kTwoPi / k);
  std::vector<cplx> turned;
  for (const auto& p : points) turned.push_back(p * rot);
  auto directed = [](const std::vector<cplx>& from, const std::vector<cplx>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(points, turned), directed(turned, points));
}

namespace {
std::vector<cplx> off_origin(const std::vector<LocalMinimum>& minima, double radius) {
  std::vector<cplx> out;
  for (const auto& m : minima) {
    const cplx z(m.b, m.omega);
    if (std::abs(z) >= radius) out.push_back(z);
  }
  return out;
}
}  // namespace

StellarReport stellar_experiment(const ZeroSet& zeros, const StellarParams& params, Warnings* warnings) {
  StellarReport rep{stellar_distribution(zeros, params.s, params.grid, warnings), Distribution(params.grid), {}, {}, {}, {}, {}};
  rep.portrait = portrait(rep.w.w, params.probe_a, params.probe_r, warnings);
  rep.minima_w = find_local_minima(rep.w.w, params.rel_threshold);
  rep.minima_portrait = find_local_minima(rep.portrait, params.rel_threshold);
  rep.matches_w = match_zeros(zeros, rep.minima_w, params.match_cutoff);
  rep.matches_portrait = match_zeros(zeros, rep.minima_portrait, params.match_cutoff, &rep.unmatched_portrait);
  for (const auto& m : rep.matches_portrait)
    if (m.minimum) {
      ++rep.matched_count;
      rep.max_displacement = std::max(rep.max_displacement, m.displacement);
    }
  rep.symmetry_residual_w = rotation_residual(off_origin(rep.minima_w, params.origin_radius), params.symmetry_order);
  rep.symmetry_residual_portrait =
      rotation_residual(off_origin(rep.minima_portrait, params.origin_radius), params.symmetry_order);
  return rep;
}

QuantizedStellar quantize_stellar(const ZeroSet& zeros, const StellarParams& params, Warnings* warnings) {
  const auto w = stellar_distribution(zeros, params.s, params.grid, warnings);
  const auto probe = gaussian_probe_signal(params.probe_a, params.time_grid, warnings);
  OperatorKernel K = quantize_to_kernel(w.w, probe, warnings);
  const DensityReport d = density_diagnostics(K);
  return {std::move(K), d};
}

}  // namespace wh
