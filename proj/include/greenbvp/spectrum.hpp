#pragma once

#include <cstddef>
#include <vector>

#include "greenbvp/kernel.hpp"
#include "greenbvp/params.hpp"

namespace greenbvp {

// Positivity frontier: m coth(m/2) for gamma = -m^2 < 0, 2 at gamma = 0,
// m cot(m/2) for gamma = m^2 in (0, pi^2). Continuous at 0.
// Throws DomainError for gamma >= pi^2 or non-finite gamma.
double delta(double gamma);

enum class SignClass { positive, changes_sign };

const char* to_string(SignClass c) noexcept;

struct SignClassification {
  SignClass sign = SignClass::positive;
  // True when the answer comes from a mesh scan (m > pi) rather than from
  // the closed-form characterization.
  bool numerical = false;
  // lambda = 0: positive kernel but G(1, s) vanishes, so no cone exists.
  bool lambda_zero = false;
};

// Throws ResonanceError for resonant parameters.
SignClassification classify_sign(const ProblemParams& params);

// Extrema of G over an n x n mesh of [0,1]^2, or of its interior points
// only (t, s in (0, 1)) when interior is set.
struct MeshExtrema {
  double min;
  double max;
  double t_min, s_min;
  double t_max, s_max;
};

MeshExtrema kernel_mesh_extrema(const GreenKernel& kernel, std::size_t n, bool interior);

// Cone data: h(t) G(1,s) <= G(t,s) <= C G(1,s). The lower envelope of the
// cone is h(t) / C, over the comparison interval [a, b].
class ConeSpec {
 public:
  ConeSpec(Regime regime, std::vector<double> t_grid, std::vector<double> h_values,
           double constant, bool exact_linear, double a = 0.5, double b = 1.0);

  // h(t). Between samples this is a piecewise-linear interpolant lowered by
  // an estimate of its overshoot in convex cells, so it stays below the
  // true minimum ratio.
  double envelope(double t) const;
  double lower_envelope(double t) const { return envelope(t) / constant_; }

  double constant() const noexcept { return constant_; }
  Regime regime() const noexcept { return regime_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  // gamma = 0: h(t) = t exactly.
  bool exact_linear() const noexcept { return exact_linear_; }
  const std::vector<double>& t_grid() const noexcept { return t_grid_; }
  const std::vector<double>& h_values() const noexcept { return h_values_; }

 private:
  Regime regime_;
  std::vector<double> t_grid_;
  std::vector<double> h_values_;
  std::vector<double> cell_slack_;
  double constant_;
  bool exact_linear_;
  double a_;
  double b_;
};

inline constexpr std::size_t kDefaultBoundGrid = 201;

// gamma = 0: h(t) = t and C = 2 / lambda. Otherwise h(t) = min_s ratio and
// C = max ratio of G(t,s) / G(1,s), computed on a grid with Brent
// refinement (also along t = s). The ratio at s -> 0+ and s -> 1- uses
// closed-form limits.
// Throws DegenerateConeError for lambda <= 0 and ClassificationError if the
// kernel is not positive.
ConeSpec bound_constants(const ProblemParams& params, std::size_t grid_n = kDefaultBoundGrid);

// The ratio G(t,s) / G(1,s) with its continuous extensions at s = 0, 1
// (closed-form limits) and the value 1 at t = 1. Requires lambda > 0.
double kernel_ratio(const GreenKernel& kernel, double t, double s);

// 1 / (2 (2 - lambda)); gamma = 0 and lambda in [0, 2) only, otherwise
// DomainError.
double max_kernel_bound(const ProblemParams& params);

}  // namespace greenbvp
