#include "greenbvp/params.hpp"

#include <cmath>
#include <string>

#include "greenbvp/error.hpp"

namespace greenbvp {

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::zero: return "zero";
    case Regime::positive: return "positive";
    case Regime::negative: return "negative";
  }
  return "unknown";
}

const char* to_string(IntegralEnd e) noexcept {
  return e == IntegralEnd::left ? "left" : "right";
}

GammaClass classify_gamma(double gamma) {
  if (!std::isfinite(gamma)) {
    throw InputError("gamma must be finite");
  }
  if (gamma == 0.0) return {Regime::zero, 0.0};
  const double m = std::sqrt(std::abs(gamma));
  return {gamma > 0.0 ? Regime::positive : Regime::negative, m};
}

ProblemParams::ProblemParams(double gamma, double lambda)
    : gamma_(gamma), lambda_(lambda), cls_(classify_gamma(gamma)) {
  if (!std::isfinite(lambda)) {
    throw InputError("lambda must be finite");
  }
}

}  // namespace greenbvp
