#pragma once

#include <numbers>

namespace greenbvp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPiSquared = std::numbers::pi * std::numbers::pi;

enum class Regime { zero, positive, negative };

const char* to_string(Regime r) noexcept;

// Sign class of gamma together with m = sqrt(|gamma|).
struct GammaClass {
  Regime regime = Regime::zero;
  double m = 0.0;
};

// Throws InputError for non-finite gamma.
GammaClass classify_gamma(double gamma);

// Which endpoint carries the integral condition. `right` is the standard
// problem u(0) = 0, u(1) = lambda * int u; `left` is the reflected one
// u(0) = lambda * int u, u(1) = 0.
enum class IntegralEnd { left, right };

const char* to_string(IntegralEnd e) noexcept;

// The pair (gamma, lambda) of u'' + gamma u + sigma = 0 with the nonlocal
// condition, plus its derived regime.
class ProblemParams {
 public:
  // Throws InputError when gamma or lambda is not finite.
  ProblemParams(double gamma, double lambda);

  double gamma() const noexcept { return gamma_; }
  double lambda() const noexcept { return lambda_; }
  Regime regime() const noexcept { return cls_.regime; }
  double m() const noexcept { return cls_.m; }

 private:
  double gamma_;
  double lambda_;
  GammaClass cls_;
};

}  // namespace greenbvp
