#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace greenbvp {

// n equispaced points on [0, 1], endpoints included. Requires n >= 2.
std::vector<double> uniform_grid(std::size_t n);

// Weights of the local four-point (cubic Lagrange) interpolant of grid data
// at x: value = sum_k w[k] * data[first + k].
struct InterpStencil {
  std::size_t first = 0;
  std::array<double, 4> w{};
};

// Grid must be strictly increasing with at least 4 points.
InterpStencil cubic_stencil(std::span<const double> grid, double x);

// A function on [0, 1] given by samples on a strictly increasing grid that
// starts at 0 and ends at 1, with piecewise-cubic interpolation in between.
class SolutionProfile {
 public:
  // Throws InputError unless the grid is valid and sizes match.
  SolutionProfile(std::vector<double> grid, std::vector<double> values);

  static SolutionProfile sample(std::size_t n, const std::function<double(double)>& fn);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double norm_inf() const noexcept { return norm_inf_; }

  // Spacing if the grid is uniform to within tol (relative to the mean
  // spacing), otherwise 0.
  double uniform_spacing(double tol = 1e-9) const noexcept;

  // Interpolated value; x is clamped to [0, 1].
  double operator()(double x) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  double norm_inf_ = 0.0;
};

}  // namespace greenbvp
