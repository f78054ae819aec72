#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "greenbvp/params.hpp"
#include "greenbvp/profile.hpp"
#include "greenbvp/quadrature.hpp"

namespace greenbvp {

inline constexpr std::size_t kDefaultSolveGrid = 201;
inline constexpr std::size_t kDefaultVerifyGrid = 1001;

// Residuals of u'' + gamma u + sigma = 0, u(0) = 0, u(1) = lambda int u.
// With IntegralEnd::left the roles of the two ends are swapped.
struct ResidualReport {
  double ode_residual_inf = 0.0;
  double bc_left = 0.0;
  double bc_right = 0.0;
  double integral_value = 0.0;  // int_0^1 u
};

// u(t_i) = int_0^1 G(t_i, s) sigma(s) ds on grid_n uniform points. Throws
// ResonanceError, or EvaluationError when sigma is not finite at a node.
SolutionProfile solve_linear(const ProblemParams& params, const std::function<double(double)>& sigma,
                             std::size_t grid_n = kDefaultSolveGrid,
                             const QuadratureRule& rule = QuadratureRule());

// Composite Simpson on uniform data (3/8 rule on the last three cells when
// the cell count is odd); trapezoid below four points.
double simpson(std::span<const double> values, double h);

// Second differences on the grid, one-sided at the two ends. fd_h <= 0 means
// use the grid spacing. The grid must be uniform with at least 11 points.
ResidualReport verify_solution(const ProblemParams& params, const std::function<double(double)>& sigma,
                               const SolutionProfile& profile, double fd_h = 0.0,
                               IntegralEnd end = IntegralEnd::right);

// Same, with sigma already sampled on the profile grid.
ResidualReport verify_solution(const ProblemParams& params, std::span<const double> sigma_values,
                               const SolutionProfile& profile, double fd_h = 0.0,
                               IntegralEnd end = IntegralEnd::right);

}  // namespace greenbvp
