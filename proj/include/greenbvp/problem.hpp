#pragma once

#include <algorithm>

#include "greenbvp/expr.hpp"
#include "greenbvp/params.hpp"

namespace greenbvp {

// u'' + gamma u + f(t, u) = 0 with the integral condition on `end`.
// [a, b] is the interval over which the lower growth limits (and the cone
// comparison) are taken; defaults [1/2, 1] for the right end and [0, 1/2]
// for the left end.
struct NonlinearProblem {
  NonlinearProblem(ProblemParams p, Expression nonlinearity,
                   IntegralEnd integral_end = IntegralEnd::right);
  NonlinearProblem(ProblemParams p, Expression nonlinearity, IntegralEnd integral_end,
                   double interval_a, double interval_b);

  ProblemParams params;
  Expression f;
  IntegralEnd end;
  double a;
  double b;

  // f is only defined for u >= 0; negative arguments are clamped to 0.
  double eval_f(double t, double u) const { return f.eval(t, std::max(u, 0.0)); }
};

}  // namespace greenbvp
