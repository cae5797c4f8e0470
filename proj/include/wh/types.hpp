#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace wh {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform 1-D sampling: point(i) = start + i * step, 0 <= i < count.
class Grid1D {
 public:
  Grid1D(double start, double step, std::size_t count);

  /// Symmetric periodic-style grid [-half_width, half_width) with the origin on a node.
  static Grid1D centered(double half_width, std::size_t count);
  /// Uniform nodes on [0, 2 pi) without the duplicated endpoint.
  static Grid1D circle(std::size_t count);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }
  double point(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
  /// Length of the periodic cell, count * step.
  double period() const noexcept { return static_cast<double>(count_) * step_; }

  /// Index of the node at the origin, if the grid is aligned so that one exists.
  bool has_origin_node(std::size_t* index = nullptr) const noexcept;

  bool operator==(const Grid1D&) const = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

/// (omega, b) lattice. Axis 0 is frequency, axis 1 is time; storage is omega-major.
struct PhaseSpaceGrid {
  Grid1D omega;
  Grid1D b;

  std::size_t size() const noexcept { return omega.count() * b.count(); }
  std::size_t index(std::size_t io, std::size_t ib) const noexcept { return io * b.count() + ib; }
  /// Weight of one cell under d omega d b / (2 pi).
  double cell_measure() const noexcept { return omega.step() * b.step() / kTwoPi; }

  bool operator==(const PhaseSpaceGrid&) const = default;
};

/// Sink for non-fatal numerical diagnostics. Functions append to it when given one.
struct Warnings {
  std::vector<std::string> messages;

  void add(std::string message) { messages.push_back(std::move(message)); }
  bool empty() const noexcept { return messages.empty(); }
};

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->add(std::move(message));
}

/// Complex samples of a function on the line.
struct SampledSignal {
  Grid1D grid;
  std::vector<cplx> values;

  SampledSignal(Grid1D g, std::vector<cplx> v);
  explicit SampledSignal(Grid1D g) : grid(g), values(g.count()) {}

  /// Discrete L2 norm squared, step * sum |s_i|^2.
  double norm_sq() const;
};

/// Complex samples of a 2 pi-periodic function on [0, 2 pi).
struct CircularSignal {
  Grid1D grid;
  std::vector<cplx> values;

  CircularSignal(Grid1D g, std::vector<cplx> v);
  explicit CircularSignal(std::size_t count);

  double norm_sq() const;
};

/// Non-negative real function over a PhaseSpaceGrid with measure d omega d b / 2 pi.
struct Distribution {
  PhaseSpaceGrid grid;
  std::vector<double> values;

  Distribution(PhaseSpaceGrid g, std::vector<double> v);
  explicit Distribution(PhaseSpaceGrid g) : grid(g), values(g.size(), 0.0) {}

  double at(std::size_t io, std::size_t ib) const { return values[grid.index(io, ib)]; }
  double& at(std::size_t io, std::size_t ib) { return values[grid.index(io, ib)]; }

  /// Riemann sum of the values under d omega d b / 2 pi.
  double mass() const;
  double max_value() const;
  /// Rescaled copy with unit mass. Throws if the mass is not positive.
  Distribution normalized() const;
};

/// Complex function over a PhaseSpaceGrid (weights, Gabor coefficients).
struct PhaseSpaceFunction {
  PhaseSpaceGrid grid;
  std::vector<cplx> values;

  PhaseSpaceFunction(PhaseSpaceGrid g, std::vector<cplx> v);
  explicit PhaseSpaceFunction(PhaseSpaceGrid g) : grid(g), values(g.size()) {}

  cplx at(std::size_t io, std::size_t ib) const { return values[grid.index(io, ib)]; }
};

/// Largest |v_i| over a span.
double max_abs(std::span<const cplx> v);

/// Sum in index order with Neumaier compensation; fixed order keeps results reproducible.
double stable_sum(std::span<const double> v);
cplx stable_sum(std::span<const cplx> v);

}  // namespace wh
