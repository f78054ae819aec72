#include "greenbvp/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "greenbvp/error.hpp"

namespace greenbvp {
namespace {

// Thomas algorithm for a tridiagonal system with constant off-diagonal c.
std::vector<double> thomas(const std::vector<double>& diag, double c, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> cp(n);
  double scale = 0.0;
  for (double d : diag) scale = std::max(scale, std::abs(d));
  scale = std::max(scale, std::abs(c));
  double pivot = diag[0];
  for (std::size_t i = 0;; ++i) {
    if (std::abs(pivot) < 1e-13 * scale) {
      throw NearResonanceError("finite-difference system is singular (pivot " + std::to_string(pivot) +
                               " at row " + std::to_string(i) + ")");
    }
    cp[i] = c / pivot;
    rhs[i] /= pivot;
    if (i + 1 == n) break;
    pivot = diag[i + 1] - c * cp[i];
    rhs[i + 1] -= c * rhs[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
  return rhs;
}

double central_fu(const NonlinearProblem& p, double t, double u) {
  const double e = 1e-6 * std::max(1.0, std::abs(u));
  const double hi = u + e;
  const double lo = std::max(u - e, 0.0);
  return (p.eval_f(t, hi) - p.eval_f(t, lo)) / (hi - lo);
}

}  // namespace

std::vector<double> FDSystem::solve() const {
  const double c = 1.0 / (h * h);
  const bool right = end == IntegralEnd::right;
  // a: the system with u_end = 0; b: homogeneous system with u_end = 1.
  std::vector<double> a = thomas(diag, c, rhs);
  std::vector<double> unit(n, 0.0);
  unit[right ? n - 1 : 0] = -c;
  std::vector<double> b = thomas(diag, c, std::move(unit));

  const std::size_t e = right ? n + 1 : 0;
  double wa = 0.0;
  double wb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    wa += trapezoid[i + 1] * a[i];
    wb += trapezoid[i + 1] * b[i];
  }
  const double denom = 1.0 - lambda * (wb + trapezoid[e]);
  if (std::abs(denom) < 1e-12) {
    throw NearResonanceError("finite-difference system is singular (nonlocal row, reduced pivot " +
                             std::to_string(denom) + ")");
  }
  const double beta = (rhs_end + lambda * wa) / denom;

  std::vector<double> u(n + 2, 0.0);
  for (std::size_t i = 0; i < n; ++i) u[i + 1] = a[i] + beta * b[i];
  u[e] = beta;
  return u;
}

FDSystem assemble_fd_linear(const ProblemParams& params, const std::function<double(double)>& sigma,
                            std::size_t n, IntegralEnd end) {
  if (n < 2) throw InputError("fd: need at least two interior points");
  FDSystem sys;
  sys.n = n;
  sys.h = 1.0 / static_cast<double>(n + 1);
  sys.lambda = params.lambda();
  sys.end = end;
  sys.diag.assign(n, -2.0 / (sys.h * sys.h) + params.gamma());
  sys.rhs.resize(n);
  for (std::size_t i = 0; i < n; ++i) sys.rhs[i] = -sigma(static_cast<double>(i + 1) * sys.h);
  sys.trapezoid.assign(n + 2, sys.h);
  sys.trapezoid.front() = 0.5 * sys.h;
  sys.trapezoid.back() = 0.5 * sys.h;
  return sys;
}

SolutionProfile solve_fd_linear(const ProblemParams& params, const std::function<double(double)>& sigma,
                                std::size_t n, IntegralEnd end) {
  if (n < 50) throw InputError("solve_fd_linear: n must be at least 50");
  const FDSystem sys = assemble_fd_linear(params, sigma, n, end);
  return SolutionProfile(uniform_grid(n + 2), sys.solve());
}

FDNewtonResult solve_fd_newton(const NonlinearProblem& problem, std::size_t n,
                               const SolutionProfile& u0, const FDNewtonOptions& options) {
  if (n < 2) throw InputError("solve_fd_newton: need at least two interior points");
  const double h = 1.0 / static_cast<double>(n + 1);
  const double c = 1.0 / (h * h);
  const double gamma = problem.params.gamma();
  const double lambda = problem.params.lambda();
  const bool right = problem.end == IntegralEnd::right;
  const std::size_t hom = right ? 0 : n + 1;
  const std::size_t e = right ? n + 1 : 0;
  const std::vector<double> grid = uniform_grid(n + 2);

  std::vector<double> u(n + 2);
  for (std::size_t i = 0; i < n + 2; ++i) u[i] = u0(grid[i]);
  u[hom] = 0.0;

  auto trap = [&](const std::vector<double>& v) {
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * h;
  };
  // Interior residuals in slots 1..n, integral row in slot e.
  auto residual = [&](const std::vector<double>& v, std::vector<double>& r) {
    r.assign(n + 2, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
      r[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * c + gamma * v[i] + problem.eval_f(grid[i], v[i]);
    }
    r[e] = v[e] - lambda * trap(v);
    double worst = 0.0;
    for (double x : r) worst = std::max(worst, std::abs(x));
    if (!std::isfinite(worst)) worst = std::numeric_limits<double>::infinity();
    return worst;
  };

  std::vector<double> r;
  double norm = residual(u, r);
  FDSystem sys;
  sys.n = n;
  sys.h = h;
  sys.lambda = lambda;
  sys.end = problem.end;
  sys.diag.resize(n);
  sys.rhs.resize(n);
  sys.trapezoid.assign(n + 2, h);
  sys.trapezoid.front() = 0.5 * h;
  sys.trapezoid.back() = 0.5 * h;

  std::vector<double> trial(n + 2);
  std::vector<double> r_trial;
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    if (norm < options.tol) return {SolutionProfile(grid, u), norm, iter};
    for (std::size_t i = 0; i < n; ++i) {
      sys.diag[i] = -2.0 * c + gamma + central_fu(problem, grid[i + 1], u[i + 1]);
      sys.rhs[i] = -r[i + 1];
    }
    sys.rhs_end = -r[e];
    std::vector<double> delta;
    try {
      delta = sys.solve();
    } catch (const NearResonanceError& e) {
      throw ConvergenceError(std::string("fd Newton: singular Jacobian, ") + e.what(), norm);
    }

    double step = 1.0;
    double trial_norm = std::numeric_limits<double>::infinity();
    for (int halvings = 0; halvings < 30; ++halvings, step *= 0.5) {
      for (std::size_t i = 0; i < n + 2; ++i) trial[i] = u[i] + step * delta[i];
      trial_norm = residual(trial, r_trial);
      if (trial_norm < norm) break;
    }
    double dmax = 0.0;
    double umax = 0.0;
    for (std::size_t i = 0; i < n + 2; ++i) {
      dmax = std::max(dmax, std::abs(step * delta[i]));
      umax = std::max(umax, std::abs(u[i]));
    }
    if (!(trial_norm < norm)) {
      // No decrease along the Newton direction. At the rounding floor of the
      // second differences this is convergence, otherwise failure.
      if (norm < std::max(options.tol, 1e3 * std::numeric_limits<double>::epsilon() * c * (1.0 + umax))) {
        return {SolutionProfile(grid, u), norm, iter};
      }
      throw ConvergenceError("fd Newton: line search failed, residual " + std::to_string(norm), norm);
    }
    u.swap(trial);
    r.swap(r_trial);
    norm = trial_norm;
    if (step == 1.0 && dmax <= 1e-14 * (1.0 + umax) &&
        norm < std::max(options.tol, 1e3 * std::numeric_limits<double>::epsilon() * c * (1.0 + umax))) {
      return {SolutionProfile(grid, u), norm, iter + 1};
    }
  }
  if (norm < options.tol) return {SolutionProfile(grid, u), norm, options.max_iter};
  throw ConvergenceError("fd Newton did not converge, residual " + std::to_string(norm), norm);
}

}  // namespace greenbvp
