#include "greenbvp/problem.hpp"

#include <cmath>

namespace greenbvp {

NonlinearProblem::NonlinearProblem(ProblemParams p, Expression nonlinearity,
                                   IntegralEnd integral_end)
    : NonlinearProblem(p, std::move(nonlinearity), integral_end,
                       integral_end == IntegralEnd::right ? 0.5 : 0.0,
                       integral_end == IntegralEnd::right ? 1.0 : 0.5) {}

NonlinearProblem::NonlinearProblem(ProblemParams p, Expression nonlinearity,
                                   IntegralEnd integral_end, double interval_a,
                                   double interval_b)
    : params(p), f(std::move(nonlinearity)), end(integral_end), a(interval_a), b(interval_b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b) || a < 0.0 || b > 1.0) {
    throw InputError("cone interval must satisfy 0 <= a < b <= 1");
  }
  // The comparison interval must stay away from the end where u is pinned to 0.
  if (end == IntegralEnd::right ? a <= 0.0 : b >= 1.0) {
    throw InputError("cone interval must exclude the homogeneous endpoint");
  }
}

}  // namespace greenbvp
