#include "wh/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wh/fft.hpp"

namespace wh {

namespace {

double bessel_i_series(int order, double x) {
  const double half = 0.5 * x;
  const double q = half * half;
  double term = 1.0;
  for (int k = 1; k <= order; ++k) term *= half / k;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Backward recurrence I_{k-1} = (2k/x) I_k + I_{k+1}, normalized with
// e^x = I_0 + 2 sum_{k>=1} I_k.
double bessel_i_miller(int order, double x) {
  const int start = order + static_cast<int>(std::sqrt(80.0 * x)) + 20;
  double next = 0.0;
  double cur = 1.0;
  double sum = 0.0;
  double result = (order == start) ? cur : 0.0;
  for (int k = start; k >= 1; --k) {
    sum += 2.0 * cur;
    const double prev = (2.0 * k / x) * cur + next;
    next = cur;
    cur = prev;
    if (k - 1 == order) result = cur;
    if (cur > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      sum *= 1e-250;
      result *= 1e-250;
    }
  }
  sum += cur;
  return result / sum * std::exp(x);
}

bool is_integer_shift(double shift, double step, long* cells) {
  const double q = shift / step;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-12 * std::max(1.0, std::abs(q))) return false;
  *cells = static_cast<long>(r);
  return true;
}

double border_max(const Distribution& d) {
  const auto n0 = d.grid.omega.count();
  const auto n1 = d.grid.b.count();
  double m = 0.0;
  for (std::size_t i = 0; i < n0; ++i) m = std::max({m, std::abs(d.at(i, 0)), std::abs(d.at(i, n1 - 1))});
  for (std::size_t j = 0; j < n1; ++j) m = std::max({m, std::abs(d.at(0, j)), std::abs(d.at(n0 - 1, j))});
  return m;
}

// 3x3 linear solve by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    std::swap(m[c], m[p]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double s = m[r][3];
    for (int k = r + 1; k < 3; ++k) s -= m[r][k] * x[k];
    x[r] = s / m[r][r];
  }
  return x;
}

}  // namespace

double bessel_i(int order, double x) {
  if (order < 0 || order > kBesselMaxOrder) throw std::domain_error("bessel_i: order must lie in [0, 64]");
  if (!(x >= 0.0)) throw std::domain_error("bessel_i: argument must be non-negative");
  if (x > kBesselMaxArgument) throw std::domain_error("bessel_i: argument exceeds 700");
  if (x <= 30.0) return bessel_i_series(order, x);
  return bessel_i_miller(order, x);
}

cplx periodic_trapezoid(std::span<const cplx> values) {
  if (values.empty()) return {0.0, 0.0};
  return stable_sum(values) * (kTwoPi / static_cast<double>(values.size()));
}

double periodic_trapezoid(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return stable_sum(values) * (kTwoPi / static_cast<double>(values.size()));
}

bool edge_exceeds(std::span<const cplx> v, double rel_tol) {
  if (v.empty()) return false;
  const double peak = max_abs(v);
  if (peak == 0.0) return false;
  return std::max(std::abs(v.front()), std::abs(v.back())) > rel_tol * peak;
}

std::vector<cplx> periodic_shift(std::span<const cplx> values, double step, double shift) {
  const std::size_t n = values.size();
  std::vector<cplx> out(values.begin(), values.end());
  if (n == 0 || shift == 0.0) return out;
  long cells = 0;
  if (is_integer_shift(shift, step, &cells)) {
    const long ln = static_cast<long>(n);
    const long r = ((cells % ln) + ln) % ln;
    std::rotate(out.begin(), out.end() - r, out.end());
    return out;
  }
  fft::forward(out);
  for (std::size_t k = 0; k < n; ++k) {
    const double kappa = fft::signed_frequency(k, n, step);
    if (n % 2 == 0 && 2 * k == n)
      out[k] *= std::cos(kappa * shift);
    else
      out[k] *= std::polar(1.0, -kappa * shift);
  }
  fft::inverse(out);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= inv_n;
  return out;
}

SampledSignal fractional_shift(const SampledSignal& signal, double shift, Warnings* warnings) {
  if (edge_exceeds(signal.values, 1e-10))
    warn(warnings, "fractional_shift: signal does not decay at the grid edges; wrap-around contamination likely");
  return SampledSignal(signal.grid, periodic_shift(signal.values, signal.grid.step(), shift));
}

double dirichlet_interpolant(double x, std::size_t n, double step) {
  const double period = static_cast<double>(n) * step;
  const double u = kPi * x / period;
  const double s = std::sin(u);
  if (std::abs(s) < 1e-6) {
    // Direct cosine sum near multiples of the period, where the closed form is 0/0.
    double acc = 1.0;
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < (n + 1) / 2; ++k) acc += 2.0 * std::cos(kTwoPi * static_cast<double>(k) * x / period);
    if (n % 2 == 0) acc += std::cos(kTwoPi * static_cast<double>(half) * x / period);
    return acc / static_cast<double>(n);
  }
  const double num = std::sin(static_cast<double>(n) * u);
  if (n % 2 == 0) return num * std::cos(u) / (static_cast<double>(n) * s);
  return num / (static_cast<double>(n) * s);
}

Distribution grid_convolve(const Distribution& f, const Distribution& g, Warnings* warnings) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("grid_convolve: operands live on different grids");
  const auto& grid = f.grid;
  std::size_t c0 = 0, c1 = 0;
  if (!grid.omega.has_origin_node(&c0) || !grid.b.has_origin_node(&c1))
    throw std::invalid_argument("grid_convolve: grid needs a node at the origin on both axes");
  const double tol = 1e-10;
  if (border_max(f) > tol * f.max_value() || border_max(g) > tol * g.max_value())
    warn(warnings, "grid_convolve: operand does not decay at the grid boundary; convolution truncated");

  const std::size_t n0 = grid.omega.count(), n1 = grid.b.count();
  const std::size_t p0 = fft::next_pow2(2 * n0), p1 = fft::next_pow2(2 * n1);
  std::vector<cplx> a(p0 * p1), bb(p0 * p1);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      a[i * p1 + j] = f.at(i, j);
      bb[i * p1 + j] = g.at(i, j);
    }
  fft::forward_2d(a, p0, p1);
  fft::forward_2d(bb, p0, p1);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= bb[k];
  fft::inverse_2d(a, p0, p1);
  const double scale = grid.cell_measure() / static_cast<double>(p0 * p1);
  Distribution h(grid);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) h.at(i, j) = a[(i + c0) * p1 + (j + c1)].real() * scale;
  return h;
}

std::vector<LocalMinimum> find_local_minima(const Distribution& w, double rel_threshold) {
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
    throw std::invalid_argument("find_local_minima: threshold must lie in (0, 1)");
  const auto n0 = w.grid.omega.count(), n1 = w.grid.b.count();
  const double cutoff = rel_threshold * w.max_value();
  std::vector<LocalMinimum> out;
  for (std::size_t i = 1; i + 1 < n0; ++i) {
    for (std::size_t j = 1; j + 1 < n1; ++j) {
      const double v = w.at(i, j);
      if (!(v < cutoff)) continue;
      bool strict = true;
      for (int di = -1; di <= 1 && strict; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (!(w.at(i + di, j + dj) > v)) {
            strict = false;
            break;
          }
        }
      if (!strict) continue;

      // f(u, v) = c0 + c1 u + c2 v + c3 u^2 + c4 u v + c5 v^2 in cell units.
      double s = 0, su = 0, sv = 0, suv = 0, suu = 0, svv = 0;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const double fv = w.at(i + di, j + dj);
          s += fv;
          su += di * fv;
          sv += dj * fv;
          suv += di * dj * fv;
          suu += di * di * fv;
          svv += dj * dj * fv;
        }
      const double c1 = su / 6.0, c2 = sv / 6.0, c4 = suv / 4.0;
      const auto c = solve3({{{9, 6, 6, s}, {6, 6, 4, suu}, {6, 4, 6, svv}}});
      const double c0 = c[0], c3 = c[1], c5 = c[2];
      double du = 0.0, dv = 0.0, value = v;
      const double det = 4.0 * c3 * c5 - c4 * c4;
      if (c3 > 0.0 && det > 0.0) {
        const double u = (-2.0 * c5 * c1 + c4 * c2) / det;
        const double vv = (c4 * c1 - 2.0 * c3 * c2) / det;
        if (std::abs(u) <= 1.0 && std::abs(vv) <= 1.0) {
          du = u;
          dv = vv;
          value = std::max(0.0, c0 + c1 * u + c2 * vv + c3 * u * u + c4 * u * vv + c5 * vv * vv);
        }
      }
      out.push_back({w.grid.omega.point(i) + du * w.grid.omega.step(), w.grid.b.point(j) + dv * w.grid.b.step(), value});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  return out;
}

}  // namespace wh
