#include "wh/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wh {

Grid1D::Grid1D(double start, double step, std::size_t count) : start_(start), step_(step), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(step) || step <= 0.0)
    throw std::invalid_argument("Grid1D: step must be finite and positive");
  if (count < 2) throw std::invalid_argument("Grid1D: count must be at least 2");
}

Grid1D Grid1D::centered(double half_width, std::size_t count) {
  if (!(half_width > 0.0)) throw std::invalid_argument("Grid1D: half width must be positive");
  return Grid1D(-half_width, 2.0 * half_width / static_cast<double>(count), count);
}

Grid1D Grid1D::circle(std::size_t count) {
  return Grid1D(0.0, kTwoPi / static_cast<double>(count), count);
}

bool Grid1D::has_origin_node(std::size_t* index) const noexcept {
  const double q = -start_ / step_;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(count_)) return false;
  if (index != nullptr) *index = static_cast<std::size_t>(r);
  return true;
}

SampledSignal::SampledSignal(Grid1D g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.count()) throw std::invalid_argument("SampledSignal: value count does not match grid");
}

double SampledSignal::norm_sq() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return acc * grid.step();
}

namespace {
void require_circle(const Grid1D& g) {
  if (std::abs(g.start()) > 1e-15 || std::abs(g.period() - kTwoPi) > 1e-12)
    throw std::invalid_argument("CircularSignal: grid must cover [0, 2 pi) uniformly");
}
}  // namespace

CircularSignal::CircularSignal(Grid1D g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  require_circle(grid);
  if (values.size() != grid.count()) throw std::invalid_argument("CircularSignal: value count does not match grid");
}

CircularSignal::CircularSignal(std::size_t count) : grid(Grid1D::circle(count)), values(count) {}

double CircularSignal::norm_sq() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return acc * grid.step();
}

Distribution::Distribution(PhaseSpaceGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("Distribution: value count does not match grid");
}

double Distribution::mass() const { return stable_sum(values) * grid.cell_measure(); }

double Distribution::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

Distribution Distribution::normalized() const {
  const double m = mass();
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("Distribution: cannot normalize non-positive mass");
  Distribution out(grid, values);
  for (auto& v : out.values) v /= m;
  return out;
}

PhaseSpaceFunction::PhaseSpaceFunction(PhaseSpaceGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("PhaseSpaceFunction: value count does not match grid");
}

double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

double stable_sum(std::span<const double> v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

cplx stable_sum(std::span<const cplx> v) {
  std::vector<double> re(v.size()), im(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    re[i] = v[i].real();
    im[i] = v[i].imag();
  }
  return {stable_sum(re), stable_sum(im)};
}

}  // namespace wh
