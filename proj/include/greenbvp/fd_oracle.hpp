#pragma once

// Finite-difference collocation solver used to cross-check the kernel
// based solvers. It depends on nothing but the foundation library.

#include <cstddef>
#include <functional>
#include <vector>

#include "greenbvp/params.hpp"
#include "greenbvp/problem.hpp"
#include "greenbvp/profile.hpp"

namespace greenbvp {

// Unknowns u_0..u_{n+1} on t_i = i h, h = 1 / (n + 1). Interior rows are
//   u_{i-1} / h^2 + diag_i u_i + u_{i+1} / h^2 = rhs_i,
// the homogeneous end row is u = 0 and the integral end row is
//   u_end - lambda * trapezoid(u) = rhs_end.
struct FDSystem {
  std::size_t n = 0;
  double h = 0.0;
  double lambda = 0.0;
  IntegralEnd end = IntegralEnd::right;
  std::vector<double> diag;         // size n, interior rows
  std::vector<double> rhs;          // size n, interior rows
  double rhs_end = 0.0;
  std::vector<double> trapezoid;    // size n + 2, sums to 1

  // Bordered tridiagonal elimination: u = a + beta b with beta = u_end.
  // Throws NearResonanceError when the reduced system is singular.
  std::vector<double> solve() const;
};

FDSystem assemble_fd_linear(const ProblemParams& params, const std::function<double(double)>& sigma,
                            std::size_t n, IntegralEnd end = IntegralEnd::right);

// n >= 50 interior points.
SolutionProfile solve_fd_linear(const ProblemParams& params, const std::function<double(double)>& sigma,
                                std::size_t n, IntegralEnd end = IntegralEnd::right);

struct FDNewtonOptions {
  double tol = 1e-9;
  std::size_t max_iter = 50;
};

struct FDNewtonResult {
  SolutionProfile profile;
  double residual;
  std::size_t iterations;
};

// Newton on the discrete residual with backtracking. f_u is taken by
// central differences. The boundary condition end comes from problem.end.
// u0 is interpolated onto the n + 2 point grid. Throws ConvergenceError.
FDNewtonResult solve_fd_newton(const NonlinearProblem& problem, std::size_t n,
                               const SolutionProfile& u0, const FDNewtonOptions& options = {});

}  // namespace greenbvp
