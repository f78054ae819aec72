#pragma once

#include <limits>

#include "greenbvp/error.hpp"
#include "greenbvp/params.hpp"

namespace greenbvp {

// Resonance tolerance on the distance to the spectrum.
inline constexpr double kResonanceEpsilon = 1e-9;
// Within this distance of an odd multiple of pi the limit formulas are used.
inline constexpr double kDegenerateBranchEpsilon = 1e-6;

enum class ResonanceBranch { none, lambda_curve, trig_null };

const char* to_string(ResonanceBranch b) noexcept;

// Where (gamma, lambda) sits relative to the spectrum of the linear problem:
// lambda = 2 (gamma = 0), lambda = m sin m / (1 - cos m) or m = 2k pi
// (gamma = m^2 > 0), lambda = m sinh m / (cosh m - 1) (gamma = -m^2 < 0).
struct ResonanceReport {
  bool resonant = false;
  ResonanceBranch branch = ResonanceBranch::none;
  int k = 0;  // multiple of 2 pi for trig_null
  double distance = std::numeric_limits<double>::infinity();
};

// The resonance curve lambda*(m) of the given regime, written with half
// angles: 2, m cot(m/2), m coth(m/2). Infinite where cot(m/2) has a pole.
double resonance_curve(Regime regime, double m);

// Pure: no exceptions besides InputError for epsilon <= 0.
ResonanceReport check_resonance(const ProblemParams& params,
                                double epsilon = kResonanceEpsilon);

class ResonanceError : public Error {
 public:
  explicit ResonanceError(const ResonanceReport& report);
  const ResonanceReport& report() const noexcept { return report_; }

 private:
  ResonanceReport report_;
};

// Which one-sided limit to take at t = s.
enum class Side { left, right };

enum class KernelForm { polynomial, trigonometric, trigonometric_degenerate, hyperbolic };

const char* to_string(KernelForm f) noexcept;

// Green's function G_gamma(t, s) of u'' + gamma u + sigma = 0 with
// u(0) = 0, u(1) = lambda * int_0^1 u. Immutable; safe to share between
// threads. The diagonal t = s is evaluated on the s <= t piece.
class GreenKernel {
 public:
  // Throws ResonanceError when the parameters are within resonance_eps of
  // the spectrum.
  explicit GreenKernel(const ProblemParams& params, double resonance_eps = kResonanceEpsilon,
                       double branch_eps = kDegenerateBranchEpsilon);

  // t, s in [0, 1].
  double operator()(double t, double s) const noexcept;

  // One-sided dG/dt. `side` only matters at t = s: left is the t < s piece.
  double dt(double t, double s, Side side) const noexcept;

  const ProblemParams& params() const noexcept { return params_; }
  KernelForm form() const noexcept { return form_; }
  // Odd k with m ~ k pi when form() is trigonometric_degenerate, else 0.
  int degenerate_k() const noexcept { return degenerate_k_; }

 private:
  double lower(double t, double s) const noexcept;  // s <= t
  double upper(double t, double s) const noexcept;  // t < s
  double lower_dt(double t, double s) const noexcept;
  double upper_dt(double t, double s) const noexcept;

  ProblemParams params_;
  KernelForm form_ = KernelForm::polynomial;
  int degenerate_k_ = 0;
  double m_ = 0.0;
  double lambda_ = 0.0;
  // Regime-dependent constants, see kernel.cpp.
  double c_d_ = 0.0;     // m sin m - 2 lambda sin^2(m/2), hyperbolic analogue, or 2 - lambda
  double c_dir_ = 0.0;   // 1 / (m sin m), Dirichlet part
  double c_corr_ = 0.0;  // 4 lambda sin(m/2) / (m sin m c_d), integral-condition part
  double c_den_ = 0.0;   // degenerate branch denominator
};

}  // namespace greenbvp
