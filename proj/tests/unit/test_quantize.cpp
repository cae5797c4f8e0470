#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "wh/gabor_line.hpp"
#include "wh/numerics.hpp"
#include "wh/quantize.hpp"

using namespace wh;

namespace {

PhaseSpaceGrid square(double half, std::size_t n) { return {Grid1D::centered(half, n), Grid1D::centered(half, n)}; }

// Gaussian with axis variances (vo, vb), unit mass under d omega d b / 2 pi.
Distribution gaussian_w(const PhaseSpaceGrid& g, double vo, double vb, double o0 = 0.0, double b0 = 0.0) {
  Distribution w(g);
  const double amp = 1.0 / std::sqrt(vo * vb);
  for (std::size_t k = 0; k < g.omega.count(); ++k)
    for (std::size_t j = 0; j < g.b.count(); ++j) {
      const double o = g.omega.point(k) - o0, b = g.b.point(j) - b0;
      w.at(k, j) = amp * std::exp(-o * o / (2 * vo) - b * b / (2 * vb));
    }
  return w;
}

double frob(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

double frob_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

std::size_t node(const Grid1D& g, double x) { return static_cast<std::size_t>(std::llround((x - g.start()) / g.step())); }

}  // namespace

TEST_CASE("gaussian probe norms") {
  const auto g = Grid1D::centered(20.0, 1024);
  for (double w : {1.0, 5.0, 0.2}) {
    Warnings warn;
    const auto p = gaussian_probe_signal(w, g, &warn);
    CHECK(std::abs(p.norm_sq() - 1.0) < 1e-12);
    CHECK(warn.empty());
  }
  const auto p1 = gaussian_probe_signal(1.0, g);
  std::size_t c = 0;
  REQUIRE(g.has_origin_node(&c));
  CHECK(p1.values[c].real() == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-15));
  Warnings clipped;
  gaussian_probe_signal(50.0, Grid1D::centered(5.0, 64), &clipped);
  CHECK_FALSE(clipped.empty());
  CHECK_THROWS_AS(gaussian_probe_signal(0.0, g), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_probe_signal(-1.0, g), std::invalid_argument);
}

TEST_CASE("P^{ar} closed form against the overlap quadrature") {
  const auto t = Grid1D::centered(40.0, 2048);
  const double pairs[][2] = {{1, 1}, {5, 0.2}, {2, 2}, {5, 10}};
  for (const auto& ar : pairs) {
    const double a = ar[0], r = ar[1];
    const auto pa = gaussian_probe_signal(a, t), pr = gaussian_probe_signal(r, t);
    double worst = 0.0;
    for (int k = 0; k <= 32; ++k)
      for (int j = 0; j <= 32; ++j) {
        const double om = -4.0 + 0.25 * k, b = -4.0 + 0.25 * j;
        worst = std::max(worst, std::abs(par_kernel_quadrature(pa, pr, om, b) - par_kernel_value(a, r, om, b)));
      }
    CHECK(worst < 1e-8);

    const auto big = square(32.0, 512);
    CHECK(std::abs(par_kernel_closed(a, r, big).mass() - 1.0) < 1e-8);
    CHECK(par_kernel_value(a, r, 1.3, -0.7) == par_kernel_value(a, r, -1.3, 0.7));
  }
  const auto p = gaussian_probe_signal(1.0, t);
  CHECK(std::abs(par_kernel_quadrature(p, p, 0.0, 0.0) - 1.0) < 1e-12);
  CHECK(par_kernel_quadrature(p, p, 15.0, 15.0) < 1e-12);
  CHECK(std::abs(par_kernel_value(1, 1, 0.8, -1.1) - std::exp(-(0.64 + 1.21) / 2)) < 1e-15);
}

TEST_CASE("printed P^{ar} prefactor is not normalized") {
  const auto big = square(32.0, 512);
  Distribution printed(big);
  for (std::size_t k = 0; k < 512; ++k)
    for (std::size_t j = 0; j < 512; ++j) printed.at(k, j) = par_kernel_printed_value(5, 0.2, big.omega.point(k), big.b.point(j));
  CHECK(std::abs(printed.mass() - 1.0) > 0.1);
  CHECK(std::abs(printed.mass() - std::sqrt(5 * kPi / (5 * 0.2))) < 1e-8);
}

TEST_CASE("portrait") {
  const auto g = square(16.0, 256);
  SUBCASE("Gaussian variances add") {
    const double a = 1.0, r = 3.0, vo = 0.5, vb = 2.0;
    const auto w = gaussian_w(g, vo, vb);
    const auto h = portrait(w, a, r);
    const auto oracle = gaussian_w(g, vo + (r + a) / (2 * r * a), vb + (r + a) / 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < h.values.size(); ++i) worst = std::max(worst, std::abs(h.values[i] - oracle.values[i]));
    CHECK(worst < 1e-6);
    CHECK(std::abs(h.mass() - 1.0) < 1e-6);
  }
  SUBCASE("point mass returns the recentered kernel") {
    Distribution w(g);
    const std::size_t k0 = node(g.omega, 1.0), j0 = node(g.b, -2.0);
    w.at(k0, j0) = 1.0 / g.cell_measure();
    const auto h = portrait(w, 2.0, 0.5);
    double worst = 0.0, peak = 0.0;
    for (std::size_t k = 0; k < 256; ++k)
      for (std::size_t j = 0; j < 256; ++j) {
        const double ref = par_kernel_value(2.0, 0.5, g.omega.point(k) - 1.0, g.b.point(j) + 2.0);
        worst = std::max(worst, std::abs(h.at(k, j) - ref));
        peak = std::max(peak, ref);
      }
    CHECK(worst < 1e-4 * peak);
    CHECK(*std::min_element(h.values.begin(), h.values.end()) >= 0.0);
  }
  SUBCASE("unnormalized input is refused") {
    auto w = gaussian_w(g, 1.0, 1.0);
    for (auto& v : w.values) v *= 2.0;
    CHECK_THROWS_AS(portrait(w, 1.0, 1.0), std::invalid_argument);
    auto neg = gaussian_w(g, 1.0, 1.0);
    neg.values[5] = -1e-3;
    CHECK_THROWS_AS(portrait(neg, 1.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("quantize_to_kernel") {
  const auto g = square(16.0, 256);
  const auto t = Grid1D::centered(20.0, 256);
  const auto probe = gaussian_probe_signal(1.0, t);

  SUBCASE("trace, hermiticity and positivity") {
    const auto w = par_kernel_closed(1.0, 1.0, g).normalized();
    Warnings warn;
    const auto K = quantize_to_kernel(w, probe, &warn);
    CHECK(warn.empty());
    const auto d = density_diagnostics(K);
    CHECK(std::abs(d.trace - 1.0) < 1e-6);
    CHECK(std::abs(d.trace_imag) < 1e-12);
    CHECK(d.hermiticity_defect < 1e-8);
    CHECK(d.min_eigenvalue >= -1e-8);
    CHECK(d.purity < 1.0);
  }

  SUBCASE("point mass gives the displaced projector") {
    Distribution w(g);
    w.at(node(g.omega, 1.5), node(g.b, -2.0)) = 1.0 / g.cell_measure();
    const auto K = quantize_to_kernel(w, probe);
    const auto psi = displace(1.5, -2.0, probe);
    std::vector<cplx> ref(K.entries.size());
    for (std::size_t i = 0; i < 256; ++i)
      for (std::size_t j = 0; j < 256; ++j) ref[i * 256 + j] = psi.values[i] * std::conj(psi.values[j]);
    CHECK(frob_diff(K.entries, ref) < 1e-3 * frob(ref));
    const auto d = density_diagnostics(K);
    CHECK(std::abs(d.purity - 1.0) < 1e-8);
  }

  SUBCASE("agrees with the direct mixture of projectors") {
    const PhaseSpaceGrid cg{Grid1D::centered(6.0, 32), Grid1D::centered(6.0, 32)};
    const auto tc = Grid1D::centered(8.0, 128);
    const auto pc = gaussian_probe_signal(0.7, tc);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Distribution w(cg);
    for (std::size_t k = 0; k < 32; ++k)
      for (std::size_t j = 0; j < 32; ++j) {
        const double o = cg.omega.point(k), b = cg.b.point(j);
        w.at(k, j) = u(rng) * std::exp(-0.3 * (o * o + b * b));
      }
    w = w.normalized();
    const auto K = quantize_to_kernel(w, pc);

    const std::size_t n = tc.count();
    std::vector<cplx> ref(n * n);
    for (std::size_t k = 0; k < 32; ++k)
      for (std::size_t j = 0; j < 32; ++j) {
        const double om = cg.omega.point(k), b = cg.b.point(j);
        const auto sh = periodic_shift(pc.values, tc.step(), b);
        std::vector<cplx> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = std::polar(1.0, om * tc.point(i)) * sh[i];
        const double c = cg.cell_measure() * w.at(k, j);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t l = 0; l < n; ++l) ref[i * n + l] += c * v[i] * std::conj(v[l]);
      }
    CHECK(frob_diff(K.entries, ref) < 1e-12 * frob(ref));
  }

  SUBCASE("translating w conjugates the kernel") {
    const auto K0 = quantize_to_kernel(gaussian_w(g, 1.0, 1.5), probe);
    const auto K1 = quantize_to_kernel(gaussian_w(g, 1.0, 1.5, 1.0, 1.0), probe);
    const std::size_t n = t.count();
    // Columns first, then rows: D K D^dag.
    std::vector<cplx> half(n * n), conj_k(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      SampledSignal col(t);
      for (std::size_t i = 0; i < n; ++i) col.values[i] = K0.at(i, j);
      const auto dc = displace(1.0, 1.0, col);
      for (std::size_t i = 0; i < n; ++i) half[i * n + j] = dc.values[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      SampledSignal row(t);
      for (std::size_t j = 0; j < n; ++j) row.values[j] = std::conj(half[i * n + j]);
      const auto dr = displace(1.0, 1.0, row);
      for (std::size_t j = 0; j < n; ++j) conj_k[i * n + j] = std::conj(dr.values[j]);
    }
    CHECK(frob_diff(K1.entries, conj_k) < 1e-4 * frob(K1.entries));
  }

  SUBCASE("warnings and refusals") {
    auto w = gaussian_w(g, 1.0, 1.0);
    for (auto& v : w.values) v *= 3.0;
    CHECK_THROWS_AS(quantize_to_kernel(w, probe), std::invalid_argument);
    Warnings warn;
    const PhaseSpaceGrid coarse{Grid1D::centered(16.0, 64), Grid1D::centered(16.0, 64)};
    quantize_to_kernel(gaussian_w(coarse, 1.0, 1.0), probe, &warn);
    CHECK_FALSE(warn.empty());
  }
}

TEST_CASE("weyl_operator_from_weight") {
  SUBCASE("point mass at the origin is the identity") {
    const auto g = square(8.0, 64);
    const auto t = Grid1D::centered(10.0, 64);
    PhaseSpaceFunction w(g);
    w.values[g.index(node(g.omega, 0.0), node(g.b, 0.0))] = 1.0 / g.cell_measure();
    const auto K = weyl_operator_from_weight(w, t);
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < 64; ++i)
      for (std::size_t j = 0; j < 64; ++j) {
        const double v = std::abs(K.quad_weight * K.at(i, j) - (i == j ? 1.0 : 0.0));
        (i == j ? diag : off) = std::max(i == j ? diag : off, v);
      }
    CHECK(off < 1e-6);
    CHECK(diag < 1e-12);
  }

  const PhaseSpaceGrid g{Grid1D::centered(8.0, 64), Grid1D::centered(8.0, 64)};
  const auto t = Grid1D::centered(8.0, 64);
  const auto p = par_kernel_closed(1.0, 1.0, g);
  PhaseSpaceFunction w(g);
  for (std::size_t i = 0; i < p.values.size(); ++i) w.values[i] = p.values[i];
  const auto K = weyl_operator_from_weight(w, t);

  SUBCASE("real even weight gives a Hermitian kernel") {
    const auto d = density_diagnostics(K);
    CHECK(d.hermiticity_defect < 1e-10 * max_abs(K.entries));
  }

  SUBCASE("agrees with summing displaced basis vectors") {
    const std::size_t n = t.count();
    std::vector<cplx> ref(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      SampledSignal e(t);
      e.values[j] = 1.0;
      for (std::size_t k = 0; k < g.omega.count(); ++k)
        for (std::size_t l = 0; l < g.b.count(); ++l) {
          const cplx c = g.cell_measure() * w.at(k, l);
          const auto sh = periodic_shift(e.values, t.step(), g.b.point(l));
          const double om = g.omega.point(k), b = g.b.point(l);
          for (std::size_t i = 0; i < n; ++i) ref[i * n + j] += c * std::polar(1.0, om * (t.point(i) - 0.5 * b)) * sh[i] / t.step();
        }
    }
    CHECK(frob_diff(K.entries, ref) < 1e-10 * frob(ref));
    cplx tr_k = 0.0, tr_ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      tr_k += K.at(i, i);
      tr_ref += ref[i * n + i];
    }
    CHECK(std::abs(tr_k - tr_ref) < 1e-8 * std::abs(tr_ref));
  }

  SUBCASE("linear in w") {
    PhaseSpaceFunction w2(g);
    for (std::size_t i = 0; i < w.values.size(); ++i) w2.values[i] = cplx(0.0, 2.5) * w.values[i];
    const auto K2 = weyl_operator_from_weight(w2, t);
    double worst = 0.0;
    for (std::size_t i = 0; i < K.entries.size(); ++i) worst = std::max(worst, std::abs(K2.entries[i] - cplx(0.0, 2.5) * K.entries[i]));
    CHECK(worst < 1e-12 * max_abs(K.entries) * 2.5);
  }
}

TEST_CASE("density diagnostics on hand-built kernels") {
  const auto t = Grid1D::centered(10.0, 128);
  const auto g0 = gaussian_signal(t);
  const auto g1 = hermite1_signal(t);
  OperatorKernel P(t), M(t);
  for (std::size_t i = 0; i < 128; ++i)
    for (std::size_t j = 0; j < 128; ++j) {
      P.at(i, j) = g0.values[i] * std::conj(g0.values[j]);
      M.at(i, j) = 0.5 * (g0.values[i] * std::conj(g0.values[j]) + g1.values[i] * std::conj(g1.values[j]));
    }
  const auto dp = density_diagnostics(P);
  CHECK(std::abs(dp.trace - 1.0) < 1e-10);
  CHECK(std::abs(dp.purity - 1.0) < 1e-10);
  CHECK(dp.min_eigenvalue >= -1e-10);
  CHECK(dp.hermiticity_defect == 0.0);
  const auto dm = density_diagnostics(M);
  CHECK(std::abs(dm.purity - 0.5) < 1e-8);
  CHECK(std::abs(dm.trace - 1.0) < 1e-10);

  OperatorKernel A(t);
  A.at(0, 1) = 1.0;
  CHECK(density_diagnostics(A).hermiticity_defect == 1.0);
}
