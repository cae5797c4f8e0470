#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "wh/stellar.hpp"

using namespace wh;

namespace {

PhaseSpaceGrid square(double half, std::size_t n) { return {Grid1D::centered(half, n), Grid1D::centered(half, n)}; }

}  // namespace

TEST_CASE("hermite_h") {
  const cplx z(0.3, -1.7);
  CHECK(hermite_h(0, z) == cplx(1.0));
  CHECK(hermite_h(1, z) == 2.0 * z);
  CHECK(std::abs(hermite_h(2, cplx(1, 1)) - cplx(-2, 8)) < 1e-14);
  CHECK(std::abs(hermite_h(4, z) - (16.0 * std::pow(z, 4) - 48.0 * z * z + 12.0)) < 1e-12);
  for (double x : {0.2, 1.1, 2.5}) {
    CHECK(hermite_h(3, x).imag() == 0.0);
    CHECK(hermite_h(3, -x) == -hermite_h(3, x));
    CHECK(hermite_h(6, -x) == hermite_h(6, x));
  }
  CHECK_NOTHROW(hermite_h(30, z));
  CHECK_THROWS_AS(hermite_h(31, z), std::invalid_argument);
  CHECK_THROWS_AS(hermite_h(-1, z), std::invalid_argument);
}

TEST_CASE("hermite Gram matrix is diagonal with b_n(s)") {
  const auto g = square(40.0, 512);
  CHECK(hermite_norm(0, 0.5) == doctest::Approx(4.442882938158366).epsilon(1e-14));
  CHECK(hermite_norm(2, 0.5) == doctest::Approx(kPi * std::sqrt(0.5) / 0.5 * 36.0 * 2.0).epsilon(1e-14));
  for (double s : {0.3, 0.5, 0.945}) {
    for (int m = 0; m <= 5; ++m) {
      Warnings warn;
      const cplx gmm = hermite_gram(m, m, s, g, &warn);
      CHECK(warn.empty());
      CHECK(std::abs(gmm.real() / hermite_norm(m, s) - 1.0) < 1e-6);
      CHECK(std::abs(gmm.imag()) < 1e-9 * gmm.real());
      for (int n = 0; n < m; ++n) {
        const double scale = std::sqrt(hermite_norm(m, s) * hermite_norm(n, s));
        CHECK(std::abs(hermite_gram(m, n, s, g)) < 1e-6 * scale);
      }
    }
  }
  CHECK_THROWS_AS(hermite_gram(2, 2, 0.945, square(4.0, 64)), std::domain_error);
  CHECK_THROWS_AS(hermite_gram(9, 0, 0.5, g), std::invalid_argument);
  CHECK_THROWS_AS(hermite_norm(1, 1.0), std::invalid_argument);
}

TEST_CASE("stellar_distribution") {
  SUBCASE("no zeros is the anisotropic Gaussian") {
    const double s = 0.5;
    const auto d = stellar_distribution(ZeroSet{}, s, square(16.0, 256));
    CHECK(std::abs(d.normalization - std::sqrt(s) / (2.0 * (1.0 - s))) < 1e-12);
    CHECK(std::abs(d.w.mass() - 1.0) < 1e-12);
    const auto& g = d.w.grid;
    const std::size_t k = 140, j = 97;
    const double b = g.b.point(j), om = g.omega.point(k);
    CHECK(d.w.at(k, j) == doctest::Approx(std::exp(-(1 - s) * b * b - (1 / s - 1) * om * om) / d.normalization).epsilon(1e-13));
  }
  SUBCASE("vanishes at the zeros") {
    ZeroSet z{{cplx(0.5, -1.0), cplx(-2.0, 0.25), cplx(0.5, -1.0)}};
    const auto g = square(16.0, 256);
    const auto d = stellar_distribution(z, 0.6, g);
    for (const auto& p : z.points) {
      const std::size_t j = static_cast<std::size_t>(std::llround((p.real() - g.b.start()) / g.b.step()));
      const std::size_t k = static_cast<std::size_t>(std::llround((p.imag() - g.omega.start()) / g.omega.step()));
      CHECK(d.w.at(k, j) == 0.0);
    }
    const auto pent = ZeroSet::pentagon();
    double peak = 0.0;
    for (double v : stellar_distribution(pent, 0.945, square(32.0, 512)).w.values) peak = std::max(peak, v);
    for (const auto& p : pent.points) CHECK(stellar_weight(pent, 0.055, 1 / 0.945 - 1, p.real(), p.imag()) < 1e-20 * peak);
  }
  SUBCASE("mass leakage and parameter validation") {
    CHECK_THROWS_AS(stellar_distribution(ZeroSet::pentagon(), 0.945, square(4.0, 512)), std::domain_error);
    for (double s : {0.0, 1.0, 1.2, -0.1}) {
      try {
        stellar_distribution(ZeroSet{}, s, square(16.0, 64));
        FAIL("accepted s outside (0,1)");
      } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()) == "s must lie in (0,1)");
      }
    }
  }
}

TEST_CASE("pentagon w has its minima at the six zeros") {
  const StellarParams p;
  const auto d = stellar_distribution(ZeroSet::pentagon(), p.s, p.grid);
  const auto minima = find_local_minima(d.w, p.rel_threshold);
  REQUIRE(minima.size() == 6);
  const auto matches = match_zeros(ZeroSet::pentagon(), minima, p.match_cutoff);
  for (const auto& m : matches) {
    REQUIRE(m.minimum.has_value());
    CHECK(m.displacement < p.grid.b.step());
  }
}

TEST_CASE("axis swap maps rates and reflects the zeros") {
  const ZeroSet z{{cplx(0.4, 1.2), cplx(-1.0, 0.3), cplx(2.0, -0.5)}};
  ZeroSet swapped;
  for (const auto& p : z.points) swapped.points.push_back(cplx(0.0, 1.0) * std::conj(p));
  const double s = 0.7, rb = 1 - s, ro = 1 / s - 1;
  for (double b = -3.0; b <= 3.0; b += 0.37)
    for (double om = -3.0; om <= 3.0; om += 0.41) {
      const double lhs = stellar_weight(z, rb, ro, b, om);
      CHECK(std::abs(stellar_weight(swapped, ro, rb, om, b) - lhs) <= 1e-10 * std::max(lhs, 1e-300));
    }
}

TEST_CASE("match_zeros and rotation_residual") {
  const auto pent = ZeroSet::pentagon();
  std::vector<cplx> ring(pent.points.begin() + 1, pent.points.end());
  CHECK(rotation_residual(ring, 5) < 1e-14);
  CHECK(rotation_residual({cplx(1, 0), cplx(-1, 0)}, 2) < 1e-15);
  CHECK(rotation_residual({cplx(1, 0), cplx(-1, 0)}, 5) > 0.5);
  CHECK(std::isinf(rotation_residual({}, 5)));
  CHECK_THROWS_AS(rotation_residual(ring, 0), std::invalid_argument);

  const ZeroSet z{{cplx(0, 0), cplx(1, 0)}};
  const std::vector<LocalMinimum> minima{{0.0, 0.9, 0.01}, {0.0, 0.1, 0.0}, {3.0, 3.0, 0.02}, {0.05, 0.0, 0.0}};
  std::vector<LocalMinimum> left;
  const auto m = match_zeros(z, minima, 0.5, &left);
  REQUIRE(m.size() == 2);
  CHECK(m[0].minimum->b == 0.0);
  CHECK(m[0].displacement == doctest::Approx(0.05));
  CHECK(m[1].minimum->b == 0.9);
  CHECK(left.size() == 2);
  const auto none = match_zeros(z, {{3.0, 3.0, 0.0}}, 0.5);
  CHECK_FALSE(none[0].minimum.has_value());
  CHECK(std::isnan(none[0].displacement));
}

// For w = |z|^2 g with g Gaussian of axis variances v, the portrait keeps a minimum at
// the origin exactly when v exceeds the P^{ar} variance on both axes.
TEST_CASE("single zero at the origin in the portrait") {
  StellarParams p;
  p.probe_a = p.probe_r = 1.0;
  p.grid = square(24.0, 256);
  // The smeared dip is shallow, so the depth threshold is relaxed.
  p.rel_threshold = 0.9;
  SUBCASE("w wider than P^{ar}") {
    p.s = 0.9;
    const auto rep = stellar_experiment(ZeroSet{{cplx(0.0)}}, p);
    REQUIRE(rep.minima_w.size() == 1);
    REQUIRE(rep.minima_portrait.size() == 1);
    CHECK(rep.matched_count == 1);
    CHECK(rep.max_displacement < p.grid.b.step());
    CHECK(std::abs(rep.portrait.mass() - 1.0) < 1e-6);
  }
  SUBCASE("w narrower than P^{ar}") {
    p.s = 0.3;
    const auto rep = stellar_experiment(ZeroSet{{cplx(0.0)}}, p);
    CHECK(rep.minima_w.size() == 1);
    CHECK(rep.minima_portrait.empty());
    CHECK(rep.matched_count == 0);
    CHECK(std::isinf(rep.symmetry_residual_portrait));
  }
}

TEST_CASE("quantized pentagon is a mixed density operator") {
  StellarParams p;
  p.s = 0.5;
  p.grid = square(12.0, 256);
  Warnings warn;
  const auto q = quantize_stellar(ZeroSet::pentagon(), p, &warn);
  CHECK(warn.empty());
  CHECK(std::abs(q.diagnostics.trace - 1.0) < 1e-4);
  CHECK(q.diagnostics.min_eigenvalue >= -1e-6);
  CHECK(q.diagnostics.hermiticity_defect < 1e-8);
  CHECK(q.diagnostics.purity < 1.0);
}
