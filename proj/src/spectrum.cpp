#include "greenbvp/spectrum.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <utility>

#include "greenbvp/parallel.hpp"
#include "greenbvp/profile.hpp"
#include "greenbvp/simd.hpp"

namespace greenbvp {

const char* to_string(SignClass c) noexcept {
  return c == SignClass::positive ? "positive" : "changes_sign";
}

double delta(double gamma) {
  if (!std::isfinite(gamma)) throw DomainError("delta: gamma must be finite");
  if (gamma >= kPiSquared) throw DomainError("delta: defined only for gamma < pi^2");
  const GammaClass cls = classify_gamma(gamma);
  return resonance_curve(cls.regime, cls.m);
}

SignClassification classify_sign(const ProblemParams& params) {
  const GreenKernel kernel(params);  // refuses resonant parameters
  SignClassification out;
  out.lambda_zero = params.lambda() == 0.0;
  const double lambda = params.lambda();

  if (params.regime() == Regime::positive && params.m() > kPi) {
    out.numerical = true;
    const MeshExtrema ext = kernel_mesh_extrema(kernel, 201, true);
    out.sign = ext.min > 0.0 ? SignClass::positive : SignClass::changes_sign;
    return out;
  }
  const double frontier = resonance_curve(params.regime(), params.m());
  out.sign = (lambda >= 0.0 && lambda < frontier) ? SignClass::positive : SignClass::changes_sign;
  return out;
}

MeshExtrema kernel_mesh_extrema(const GreenKernel& kernel, std::size_t n, bool interior) {
  if (n < 3) throw InputError("kernel_mesh_extrema: need at least 3 mesh points");
  const auto mesh = uniform_grid(n);
  const std::size_t lo = interior ? 1 : 0;
  const std::size_t hi = interior ? n - 1 : n;
  const std::size_t width = hi - lo;

  std::vector<simd::MinMax> rows(width);
  parallel_for(0, width, [&](std::size_t r) {
    std::vector<double> vals(width);
    const double t = mesh[lo + r];
    for (std::size_t c = 0; c < width; ++c) vals[c] = kernel(t, mesh[lo + c]);
    rows[r] = simd::min_max(vals);
  });

  MeshExtrema ext{rows[0].min, rows[0].max, mesh[lo], mesh[lo + rows[0].argmin], mesh[lo],
                  mesh[lo + rows[0].argmax]};
  for (std::size_t r = 1; r < width; ++r) {
    if (rows[r].min < ext.min) {
      ext.min = rows[r].min;
      ext.t_min = mesh[lo + r];
      ext.s_min = mesh[lo + rows[r].argmin];
    }
    if (rows[r].max > ext.max) {
      ext.max = rows[r].max;
      ext.t_max = mesh[lo + r];
      ext.s_max = mesh[lo + rows[r].argmax];
    }
  }
  return ext;
}

namespace {

// Constants of the ratio's closed-form limits. With w(t) the solution of the
// homogeneous equation with w(0) = 0, w(1) = 1 and d the kernel
// denominator factor,
//   s -> 0+:  w(1 - t)-like term * d / (lambda * k) + w(t)
//   s -> 1-:  m * sn(m t) / (lambda * k)
// where k = 1 - cos m (trig) or cosh m - 1 (hyperbolic).
struct RatioLimits {
  Regime regime;
  double m;
  double lambda;
  double d;
  double k;
  double sn_m;
};

RatioLimits ratio_limits(const ProblemParams& p) {
  RatioLimits r{p.regime(), p.m(), p.lambda(), 0.0, 0.0, 0.0};
  const double m = p.m();
  switch (p.regime()) {
    case Regime::zero:
      r.d = 2.0 - p.lambda();
      r.k = 1.0;
      r.sn_m = 1.0;
      break;
    case Regime::positive: {
      const double h = std::sin(0.5 * m);
      r.k = 2.0 * h * h;
      r.sn_m = std::sin(m);
      r.d = m * r.sn_m - p.lambda() * r.k;
      break;
    }
    case Regime::negative: {
      const double h = std::sinh(0.5 * m);
      r.k = 2.0 * h * h;
      r.sn_m = std::sinh(m);
      r.d = m * r.sn_m - p.lambda() * r.k;
      break;
    }
  }
  return r;
}

double sn(Regime regime, double x) {
  return regime == Regime::negative ? std::sinh(x) : std::sin(x);
}

double limit_s0(const RatioLimits& r, double t) {
  if (r.regime == Regime::zero) return ((2.0 - r.lambda) * (1.0 - t) + r.lambda * t) / r.lambda;
  return sn(r.regime, r.m * (1.0 - t)) / r.sn_m * r.d / (r.lambda * r.k) +
         sn(r.regime, r.m * t) / r.sn_m;
}

double limit_s1(const RatioLimits& r, double t) {
  if (r.regime == Regime::zero) return 2.0 * t / r.lambda;
  return r.m * sn(r.regime, r.m * t) / (r.lambda * r.k);
}

// sup over t in [0, 1) of limit_s1.
double limit_s1_sup(const RatioLimits& r) {
  if (r.regime == Regime::positive && r.m > 0.5 * kPi) return r.m / (r.lambda * r.k);
  return limit_s1(r, 1.0);
}

constexpr int kBrentBits = 52;

template <class F>
std::pair<double, double> refine_min(F&& f, double lo, double hi) {
  boost::uintmax_t iters = 200;
  return boost::math::tools::brent_find_minima(f, lo, hi, kBrentBits, iters);
}

}  // namespace

double kernel_ratio(const GreenKernel& kernel, double t, double s) {
  const ProblemParams& p = kernel.params();
  if (!(p.lambda() > 0.0)) throw DegenerateConeError("kernel ratio requires lambda > 0");
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (kernel.form() == KernelForm::trigonometric_degenerate) {
    // sin m = 0 makes the closed-form limits singular; sample just inside.
    constexpr double kInset = 1e-7;
    s = std::clamp(s, kInset, 1.0 - kInset);
    return kernel(t, s) / kernel(1.0, s);
  }
  const RatioLimits r = ratio_limits(p);
  if (s <= 0.0) return limit_s0(r, t);
  if (s >= 1.0) return limit_s1(r, t);
  return kernel(t, s) / kernel(1.0, s);
}

ConeSpec::ConeSpec(Regime regime, std::vector<double> t_grid, std::vector<double> h_values,
                   double constant, bool exact_linear, double a, double b)
    : regime_(regime),
      t_grid_(std::move(t_grid)),
      h_values_(std::move(h_values)),
      constant_(constant),
      exact_linear_(exact_linear),
      a_(a),
      b_(b) {
  if (t_grid_.size() < 3 || t_grid_.size() != h_values_.size()) {
    throw InputError("ConeSpec: envelope samples malformed");
  }
  if (!(constant_ >= 1.0)) throw InputError("ConeSpec: constant must be >= 1");
  const std::size_t n = t_grid_.size();
  std::vector<double> curv(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    curv[i] = h_values_[i - 1] - 2.0 * h_values_[i] + h_values_[i + 1];
  }
  curv[0] = curv[1];
  curv[n - 1] = curv[n - 2];
  cell_slack_.assign(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cell_slack_[i] = std::max(0.0, std::max(curv[i], curv[i + 1]));
  }
}

double ConeSpec::envelope(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  if (exact_linear_) return t;
  const auto it = std::upper_bound(t_grid_.begin(), t_grid_.end(), t);
  std::size_t i = it == t_grid_.begin() ? 0 : static_cast<std::size_t>(it - t_grid_.begin()) - 1;
  i = std::min(i, t_grid_.size() - 2);
  const double width = t_grid_[i + 1] - t_grid_[i];
  const double theta = (t - t_grid_[i]) / width;
  const double linear = (1.0 - theta) * h_values_[i] + theta * h_values_[i + 1];
  // Linear interpolation overshoots a convex function by at most
  // (second difference / 2) * theta (1 - theta); twice that is removed.
  return std::max(0.0, linear - cell_slack_[i] * theta * (1.0 - theta));
}

ConeSpec bound_constants(const ProblemParams& params, std::size_t grid_n) {
  if (grid_n < 11) throw InputError("bound_constants: grid_n must be >= 11");
  if (!(params.lambda() > 0.0)) {
    throw DegenerateConeError("cone needs lambda > 0: G(1, s) vanishes identically at lambda = 0");
  }
  const SignClassification cls = classify_sign(params);
  if (cls.sign != SignClass::positive) {
    throw ClassificationError("kernel changes sign; no positivity cone exists");
  }

  auto grid = uniform_grid(grid_n);
  if (params.regime() == Regime::zero) {
    return ConeSpec(Regime::zero, grid, grid, 2.0 / params.lambda(), true);
  }

  const GreenKernel kernel(params);
  std::vector<double> h(grid_n, 0.0);
  std::vector<double> row_max(grid_n, 1.0);
  parallel_for(0, grid_n, [&](std::size_t i) {
    const double t = grid[i];
    if (i == 0) {
      h[i] = 0.0;
      row_max[i] = 0.0;
      return;
    }
    if (i == grid_n - 1) {
      h[i] = 1.0;
      row_max[i] = 1.0;
      return;
    }
    std::vector<double> ratio(grid_n);
    for (std::size_t j = 0; j < grid_n; ++j) ratio[j] = kernel_ratio(kernel, t, grid[j]);
    const simd::MinMax ext = simd::min_max(ratio);

    auto bracket = [&](std::size_t j) {
      return std::pair{grid[j == 0 ? 0 : j - 1], grid[std::min(j + 1, grid_n - 1)]};
    };
    const auto f = [&](double s) { return kernel_ratio(kernel, t, s); };
    const auto [lo, hi] = bracket(ext.argmin);
    h[i] = std::min(ext.min, refine_min(f, lo, hi).second);

    const auto neg = [&](double s) { return -kernel_ratio(kernel, t, s); };
    const auto [lo2, hi2] = bracket(ext.argmax);
    row_max[i] = std::max(ext.max, -refine_min(neg, lo2, hi2).second);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid_n; ++i) {
    if (row_max[i] > row_max[best]) best = i;
  }
  double constant = row_max[best];

  // Refine the maximum in t around the best row, alternating with s.
  if (best > 0 && best + 1 < grid_n) {
    double t_star = grid[best];
    double s_star = 0.5;
    for (int pass = 0; pass < 3; ++pass) {
      const auto in_s = [&](double s) { return -kernel_ratio(kernel, t_star, s); };
      const auto rs = refine_min(in_s, 0.0, 1.0);
      s_star = rs.first;
      const auto in_t = [&](double t) { return -kernel_ratio(kernel, t, s_star); };
      const auto rt = refine_min(in_t, grid[best - 1], grid[best + 1]);
      t_star = rt.first;
      constant = std::max(constant, std::max(-rs.second, -rt.second));
    }
  }
  // The kink at t = s can hold the maximum; coordinate search cannot follow it.
  {
    const auto diag = [&](double x) { return -kernel_ratio(kernel, x, x); };
    std::size_t arg = 1;
    for (std::size_t i = 1; i + 1 < grid_n; ++i) {
      if (diag(grid[i]) < diag(grid[arg])) arg = i;
    }
    constant = std::max(constant, -refine_min(diag, grid[arg - 1], grid[arg + 1]).second);
  }
  constant = std::max(constant, limit_s1_sup(ratio_limits(params)));
  constant = std::max(constant, 1.0);
  return ConeSpec(params.regime(), std::move(grid), std::move(h), constant, false);
}

double max_kernel_bound(const ProblemParams& params) {
  if (params.regime() != Regime::zero || params.lambda() < 0.0 || params.lambda() >= 2.0) {
    throw DomainError("max_kernel_bound: requires gamma = 0 and lambda in [0, 2)");
  }
  return 1.0 / (2.0 * (2.0 - params.lambda()));
}

}  // namespace greenbvp
