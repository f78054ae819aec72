#include "greenbvp/profile.hpp"

#include <algorithm>
#include <cmath>

#include "greenbvp/error.hpp"

namespace greenbvp {

std::vector<double> uniform_grid(std::size_t n) {
  if (n < 2) throw InputError("uniform_grid: need at least 2 points");
  std::vector<double> g(n);
  const double step = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i) * step;
  g.back() = 1.0;
  return g;
}

InterpStencil cubic_stencil(std::span<const double> grid, double x) {
  const std::size_t n = grid.size();
  if (n < 4) throw InputError("cubic_stencil: need at least 4 grid points");
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  std::size_t cell = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
  cell = std::min(cell, n - 2);
  const std::size_t first = std::min(cell == 0 ? 0 : cell - 1, n - 4);

  InterpStencil st;
  st.first = first;
  for (int k = 0; k < 4; ++k) {
    const double xk = grid[first + k];
    double w = 1.0;
    for (int j = 0; j < 4; ++j) {
      if (j == k) continue;
      const double xj = grid[first + j];
      w *= (x - xj) / (xk - xj);
    }
    st.w[k] = w;
  }
  return st;
}

SolutionProfile::SolutionProfile(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() < 4) throw InputError("profile: need at least 4 grid points");
  if (grid_.size() != values_.size()) throw InputError("profile: grid/value size mismatch");
  if (grid_.front() != 0.0 || grid_.back() != 1.0) {
    throw InputError("profile: grid must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) throw InputError("profile: grid must be strictly increasing");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("profile: non-finite value");
    norm_inf_ = std::max(norm_inf_, std::abs(v));
  }
}

SolutionProfile SolutionProfile::sample(std::size_t n, const std::function<double(double)>& fn) {
  auto grid = uniform_grid(n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = fn(grid[i]);
  return SolutionProfile(std::move(grid), std::move(values));
}

double SolutionProfile::uniform_spacing(double tol) const noexcept {
  const double h = 1.0 / static_cast<double>(grid_.size() - 1);
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (std::abs((grid_[i] - grid_[i - 1]) - h) > tol * h) return 0.0;
  }
  return h;
}

double SolutionProfile::operator()(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  const InterpStencil st = cubic_stencil(grid_, x);
  double v = 0.0;
  for (int k = 0; k < 4; ++k) v += st.w[k] * values_[st.first + k];
  return v;
}

}  // namespace greenbvp
