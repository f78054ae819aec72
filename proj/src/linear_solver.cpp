#include "greenbvp/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "greenbvp/error.hpp"
#include "greenbvp/kernel.hpp"
#include "greenbvp/parallel.hpp"

namespace greenbvp {

SolutionProfile solve_linear(const ProblemParams& params, const std::function<double(double)>& sigma,
                             std::size_t grid_n, const QuadratureRule& rule) {
  if (grid_n < 11) throw InputError("solve_linear: grid_n must be at least 11");
  const GreenKernel kernel(params);
  std::vector<double> grid = uniform_grid(grid_n);
  std::vector<double> values(grid_n);
  parallel_for(0, grid_n, [&](std::size_t i) {
    values[i] = integrate_kernel_row(kernel, grid[i], sigma, rule);
  });
  return SolutionProfile(std::move(grid), std::move(values));
}

double simpson(std::span<const double> v, double h) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  if (n < 4) {
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < n; ++i) s += v[i];
    return s * h;
  }
  const std::size_t cells = n - 1;
  const std::size_t simpson_end = cells % 2 == 0 ? cells : cells - 3;
  double total = 0.0;
  if (simpson_end > 0) {
    double s = v[0] + v[simpson_end];
    for (std::size_t i = 1; i < simpson_end; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
    total = s * h / 3.0;
  }
  if (simpson_end != cells) {
    const std::size_t j = simpson_end;
    total += 3.0 * h / 8.0 * (v[j] + 3.0 * v[j + 1] + 3.0 * v[j + 2] + v[j + 3]);
  }
  return total;
}

ResidualReport verify_solution(const ProblemParams& params, std::span<const double> sigma,
                               const SolutionProfile& profile, double fd_h, IntegralEnd end) {
  const std::size_t n = profile.size();
  if (n < 11) throw InputError("verify_solution: grid too coarse (need at least 11 points)");
  if (sigma.size() != n) throw InputError("verify_solution: sigma size does not match the grid");
  const double spacing = profile.uniform_spacing();
  if (spacing == 0.0) throw InputError("verify_solution: profile grid is not uniform");
  double h = spacing;
  if (fd_h > 0.0) {
    if (std::abs(fd_h - spacing) > 1e-9 * spacing) {
      throw InputError("verify_solution: fd_h does not match the grid spacing");
    }
    h = fd_h;
  }
  const auto u = profile.values();
  const double gamma = params.gamma();
  const double h2 = h * h;

  ResidualReport r;
  auto residual_at = [&](std::size_t i, double upp) {
    return std::abs(upp + gamma * u[i] + sigma[i]);
  };
  double worst = residual_at(0, (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / h2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    worst = std::max(worst, residual_at(i, (u[i - 1] - 2.0 * u[i] + u[i + 1]) / h2));
  }
  const std::size_t l = n - 1;
  worst = std::max(worst,
                   residual_at(l, (2.0 * u[l] - 5.0 * u[l - 1] + 4.0 * u[l - 2] - u[l - 3]) / h2));
  r.ode_residual_inf = worst;

  r.integral_value = simpson(u, h);
  const double nonlocal = params.lambda() * r.integral_value;
  if (end == IntegralEnd::right) {
    r.bc_left = std::abs(u.front());
    r.bc_right = std::abs(u.back() - nonlocal);
  } else {
    r.bc_left = std::abs(u.front() - nonlocal);
    r.bc_right = std::abs(u.back());
  }
  return r;
}

ResidualReport verify_solution(const ProblemParams& params, const std::function<double(double)>& sigma,
                               const SolutionProfile& profile, double fd_h, IntegralEnd end) {
  std::vector<double> s(profile.size());
  const auto grid = profile.grid();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = sigma(grid[i]);
  return verify_solution(params, std::span<const double>(s), profile, fd_h, end);
}

}  // namespace greenbvp
