#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "greenbvp/integral_operator.hpp"
#include "greenbvp/linear_solver.hpp"
#include "greenbvp/problem.hpp"
#include "greenbvp/profile.hpp"
#include "greenbvp/spectrum.hpp"

namespace greenbvp {

// (T u)(t) = int_0^1 G(t, s) f(s, u(s)) ds on the grid of u. For a problem
// with the integral condition on the left end the reflected kernel is used.
// Throws EvalDomainError if f fails at some (s, u(s)).
SolutionProfile apply_T(const NonlinearProblem& problem, const SolutionProfile& u);

// T on a fixed grid, reusable across iterations. Standard (right end)
// problems only.
class FixedPointMap {
 public:
  FixedPointMap(const NonlinearProblem& problem, std::vector<double> grid,
                std::size_t nodes_per_cell = 4);
  const std::vector<double>& grid() const noexcept { return op_.grid(); }
  std::vector<double> apply(std::span<const double> u) const;
  // Derivative of T at u as a dense row-major matrix (rows x rows).
  std::vector<double> jacobian(std::span<const double> u) const;

 private:
  NonlinearProblem problem_;
  IntegralOperator op_;
};

enum class Growth { sublinear, superlinear, indeterminate };
const char* to_string(Growth g) noexcept;

struct GrowthRung {
  double u;
  double min_ratio;  // min over t in [a, b] of f(t, u) / u
  double max_ratio;  // max over t in [0, 1]
};

// Sampled versions of the lower limits f_0, f_inf (min over [a, b]) and the
// upper limits f^0, f^inf (max over [0, 1]). A value may be +inf when f
// overflows. The trend flags look at the three rungs nearest each end.
struct GrowthReport {
  double f0_est = 0.0;
  double f_inf_est = 0.0;
  double f_sup0_est = 0.0;
  double f_sup_inf_est = 0.0;
  bool f0_diverges = false;
  bool f_inf_diverges = false;
  bool f_sup0_vanishes = false;
  bool f_sup_inf_vanishes = false;
  Growth classification = Growth::indeterminate;
  std::vector<GrowthRung> rungs;
};

// 1e-6, 1e-5, ..., 1e6.
std::vector<double> default_ladder();

// Advisory only. The ladder must be increasing, positive, span at least
// eight decades; t_samples >= 101.
GrowthReport growth_report(const NonlinearProblem& problem, std::span<const double> ladder = {},
                           std::size_t t_samples = 101);

inline constexpr double kConeTolerance = 1e-9;

struct ConeMembership {
  bool member = false;
  double margin = 0.0;  // min_i u(t_i) - lower_envelope(t_i) ||u||
  bool nonneg = true;
};

ConeMembership cone_membership(const SolutionProfile& profile, const ConeSpec& cone,
                               double tol = kConeTolerance);
// Builds the cone with bound_constants; throws what bound_constants throws.
ConeMembership cone_membership(const SolutionProfile& profile, const ProblemParams& params,
                               double tol = kConeTolerance);

struct SolverConfig {
  double tol = 1e-10;            // on ||T u - u||_inf
  std::size_t max_iter = 500;    // Picard iterations per start
  double min_norm = 1e-4;        // below this a fixed point counts as trivial
  std::vector<double> init_amplitudes{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2};
  std::size_t grid_n = kDefaultVerifyGrid;
  std::size_t anderson_depth = 3;
  double newton_damping = 0.5;   // step reduction factor in the line searches
  std::size_t nodes_per_cell = 4;
  // Gate on the second-difference ODE residual. That residual is the
  // truncation error h^2 |u''''| / 12 of the stencil, larger at the one-sided
  // ends and for solutions with limited smoothness at t = 0 (f = sqrt(u)
  // gives h^(1/2)). So it only catches gross violations; the fixed-point
  // residual is the sharp check.
  double fd_residual_tol = 5e-2;
  double cone_tol = kConeTolerance;
};

struct SolveResult {
  SolutionProfile profile;
  ResidualReport residual;
  ConeMembership cone;
  bool cone_available = true;  // false when no cone exists for the parameters
  std::size_t iterations = 0;
  double fixed_point_residual = 0.0;
  bool positive_interior = false;
  bool outside_theorem = false;  // lambda not in (0, Delta(gamma))
  bool accepted = false;         // every check passed
  double start_amplitude = 0.0;
  std::string method{};          // "picard" or "picard+fd-newton+newton"
};

// Searches for a nontrivial nonnegative fixed point of T. Returns the first
// candidate passing every check, else the best nontrivial one with
// accepted = false. Throws SearchFailure if no nontrivial candidate exists.
SolveResult solve_positive(const NonlinearProblem& problem, const SolverConfig& config = {});

// Swaps the integral end: f(t, u) -> f(1 - t, u), [a, b] -> [1 - b, 1 - a].
NonlinearProblem reflect_problem(const NonlinearProblem& problem);
// v(t) = u(1 - t).
SolutionProfile reflect_profile(const SolutionProfile& profile);

}  // namespace greenbvp
