#include "greenbvp/kernel.hpp"

#include <cmath>
#include <string>

namespace greenbvp {

const char* to_string(ResonanceBranch b) noexcept {
  switch (b) {
    case ResonanceBranch::none: return "none";
    case ResonanceBranch::lambda_curve: return "lambda_curve";
    case ResonanceBranch::trig_null: return "trig_null";
  }
  return "unknown";
}

const char* to_string(KernelForm f) noexcept {
  switch (f) {
    case KernelForm::polynomial: return "polynomial";
    case KernelForm::trigonometric: return "trigonometric";
    case KernelForm::trigonometric_degenerate: return "trigonometric_degenerate";
    case KernelForm::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

double resonance_curve(Regime regime, double m) {
  switch (regime) {
    case Regime::zero: return 2.0;
    case Regime::positive: {
      // m sin m / (1 - cos m) = m cos(m/2) / sin(m/2)
      const double sh = std::sin(0.5 * m);
      if (sh == 0.0) return std::numeric_limits<double>::infinity();
      return m * std::cos(0.5 * m) / sh;
    }
    case Regime::negative: return m / std::tanh(0.5 * m);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

ResonanceReport check_resonance(const ProblemParams& params, double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("resonance epsilon must be positive");
  ResonanceReport r;
  const double lambda = params.lambda();
  const double m = params.m();

  r.branch = ResonanceBranch::lambda_curve;
  r.distance = std::abs(lambda - resonance_curve(params.regime(), m));

  if (params.regime() == Regime::positive) {
    const double two_pi = 2.0 * kPi;
    const int k = std::max(1, static_cast<int>(std::lround(m / two_pi)));
    const double null_gap = std::abs(m - two_pi * k);
    if (null_gap < epsilon || !(null_gap >= r.distance)) {
      r.branch = ResonanceBranch::trig_null;
      r.k = k;
      r.distance = null_gap;
    }
  }
  r.resonant = r.distance < epsilon;
  if (!r.resonant) {
    r.branch = ResonanceBranch::none;
    r.k = 0;
  }
  return r;
}

namespace {

std::string describe(const ResonanceReport& r) {
  std::string msg = "resonant parameters: ";
  msg += to_string(r.branch);
  if (r.branch == ResonanceBranch::trig_null) msg += " (m = 2*" + std::to_string(r.k) + "*pi)";
  msg += ", distance " + std::to_string(r.distance);
  return msg;
}

}  // namespace

ResonanceError::ResonanceError(const ResonanceReport& report)
    : Error(describe(report)), report_(report) {}

GreenKernel::GreenKernel(const ProblemParams& params, double resonance_eps, double branch_eps)
    : params_(params), m_(params.m()), lambda_(params.lambda()) {
  const ResonanceReport res = check_resonance(params, resonance_eps);
  if (res.resonant) throw ResonanceError(res);

  const double m = m_;
  const double lambda = lambda_;
  switch (params.regime()) {
    case Regime::zero:
      form_ = KernelForm::polynomial;
      c_d_ = 2.0 - lambda;
      break;
    case Regime::positive: {
      const long k = std::lround(m / kPi);
      if (k % 2 == 1 && std::abs(m - kPi * static_cast<double>(k)) < branch_eps) {
        form_ = KernelForm::trigonometric_degenerate;
        degenerate_k_ = static_cast<int>(k);
        m_ = kPi * static_cast<double>(k);
        c_den_ = 2.0 * m_ * lambda;
        break;
      }
      form_ = KernelForm::trigonometric;
      const double half = std::sin(0.5 * m);
      const double sin_m = std::sin(m);
      c_d_ = m * sin_m - lambda * 2.0 * half * half;
      c_dir_ = 1.0 / (m * sin_m);
      c_corr_ = 4.0 * lambda * half / (m * sin_m * c_d_);
      break;
    }
    case Regime::negative: {
      form_ = KernelForm::hyperbolic;
      const double half = std::sinh(0.5 * m);
      const double sinh_m = std::sinh(m);
      c_d_ = m * sinh_m - lambda * 2.0 * half * half;
      c_dir_ = 1.0 / (m * sinh_m);
      c_corr_ = 4.0 * lambda * half / (m * sinh_m * c_d_);
      break;
    }
  }
}

namespace {

// G = G_D(t, s) + w(t) c(s) with every factor written as a product, which
// keeps full relative accuracy as m -> 0.
struct Trig {
  static double sn(double x) { return std::sin(x); }
  static double cs(double x) { return std::cos(x); }
};
struct Hyp {
  static double sn(double x) { return std::sinh(x); }
  static double cs(double x) { return std::cosh(x); }
};

template <class F>
double correction(double m, double s, double corr) {
  return corr * F::sn(0.5 * m * s) * F::sn(0.5 * m * (1.0 - s));
}

template <class F>
double lower_v(double m, double t, double s, double dir, double corr) {
  return F::sn(m * s) * F::sn(m * (1.0 - t)) * dir + F::sn(m * t) * correction<F>(m, s, corr);
}

template <class F>
double upper_v(double m, double t, double s, double dir, double corr) {
  return F::sn(m * t) * (F::sn(m * (1.0 - s)) * dir + correction<F>(m, s, corr));
}

template <class F>
double lower_d(double m, double t, double s, double dir, double corr) {
  return -m * F::sn(m * s) * F::cs(m * (1.0 - t)) * dir + m * F::cs(m * t) * correction<F>(m, s, corr);
}

template <class F>
double upper_d(double m, double t, double s, double dir, double corr) {
  return m * F::cs(m * t) * (F::sn(m * (1.0 - s)) * dir + correction<F>(m, s, corr));
}

}  // namespace

double GreenKernel::operator()(double t, double s) const noexcept {
  return s <= t ? lower(t, s) : upper(t, s);
}

double GreenKernel::dt(double t, double s, Side side) const noexcept {
  if (t == s) return side == Side::right ? lower_dt(t, s) : upper_dt(t, s);
  return s < t ? lower_dt(t, s) : upper_dt(t, s);
}

double GreenKernel::lower(double t, double s) const noexcept {
  const double m = m_;
  const double l = lambda_;
  switch (form_) {
    case KernelForm::polynomial:
      return (t * (1.0 - s) * (2.0 - l + l * s) - c_d_ * (t - s)) / c_d_;
    case KernelForm::trigonometric:
      return lower_v<Trig>(m, t, s, c_dir_, c_corr_);
    case KernelForm::trigonometric_degenerate: {
      const double sks = std::sin(m * s);
      return (2.0 * l * sks * std::cos(m * t) +
              std::sin(m * t) * (l - l * std::cos(m * s) - m * sks)) /
             c_den_;
    }
    case KernelForm::hyperbolic:
      return lower_v<Hyp>(m, t, s, c_dir_, c_corr_);
  }
  return 0.0;
}

double GreenKernel::upper(double t, double s) const noexcept {
  const double m = m_;
  const double l = lambda_;
  switch (form_) {
    case KernelForm::polynomial:
      return t * (1.0 - s) * (2.0 - l + l * s) / c_d_;
    case KernelForm::trigonometric:
      return upper_v<Trig>(m, t, s, c_dir_, c_corr_);
    case KernelForm::trigonometric_degenerate:
      return std::sin(m * t) * (l * std::cos(m * s) - m * std::sin(m * s) + l) / c_den_;
    case KernelForm::hyperbolic:
      return upper_v<Hyp>(m, t, s, c_dir_, c_corr_);
  }
  return 0.0;
}

double GreenKernel::lower_dt(double t, double s) const noexcept {
  const double m = m_;
  const double l = lambda_;
  switch (form_) {
    case KernelForm::polynomial:
      return ((1.0 - s) * (2.0 - l + l * s) - c_d_) / c_d_;
    case KernelForm::trigonometric:
      return lower_d<Trig>(m, t, s, c_dir_, c_corr_);
    case KernelForm::trigonometric_degenerate: {
      const double sks = std::sin(m * s);
      return (-2.0 * l * m * sks * std::sin(m * t) +
              m * std::cos(m * t) * (l - l * std::cos(m * s) - m * sks)) /
             c_den_;
    }
    case KernelForm::hyperbolic:
      return lower_d<Hyp>(m, t, s, c_dir_, c_corr_);
  }
  return 0.0;
}

double GreenKernel::upper_dt(double t, double s) const noexcept {
  const double m = m_;
  const double l = lambda_;
  switch (form_) {
    case KernelForm::polynomial:
      return (1.0 - s) * (2.0 - l + l * s) / c_d_;
    case KernelForm::trigonometric:
      return upper_d<Trig>(m, t, s, c_dir_, c_corr_);
    case KernelForm::trigonometric_degenerate:
      return m * std::cos(m * t) * (l * std::cos(m * s) - m * std::sin(m * s) + l) / c_den_;
    case KernelForm::hyperbolic:
      return upper_d<Hyp>(m, t, s, c_dir_, c_corr_);
  }
  return 0.0;
}

}  // namespace greenbvp
