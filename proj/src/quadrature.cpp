#include "greenbvp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include "greenbvp/error.hpp"
#include "greenbvp/simd.hpp"

namespace greenbvp {
namespace {

// Newton iteration on P_n from the Chebyshev-like initial guesses.
GaussLegendre compute_gauss_legendre(std::size_t n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      dp = dn * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double dk = static_cast<double>(k);
      const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : dn * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) gl.nodes[n / 2] = 0.0;
  return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(std::size_t order) {
  if (order < 1 || order > 64) throw InputError("Gauss-Legendre order must be in [1, 64]");
  static std::array<std::unique_ptr<GaussLegendre>, 65> cache;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  if (!cache[order]) {
    if (order == 1) {
      cache[order] = std::make_unique<GaussLegendre>(GaussLegendre{{0.0}, {2.0}});
    } else {
      cache[order] = std::make_unique<GaussLegendre>(compute_gauss_legendre(order));
    }
  }
  return *cache[order];
}

QuadratureRule::QuadratureRule(std::size_t panels, std::size_t order,
                               std::vector<double> split_points)
    : order_(order), base_panels_(panels), splits_(std::move(split_points)) {
  if (panels < 1) throw InputError("quadrature: need at least one panel");
  breakpoints_.reserve(panels + 1 + splits_.size());
  for (std::size_t i = 0; i <= panels; ++i) {
    breakpoints_.push_back(static_cast<double>(i) / static_cast<double>(panels));
  }
  for (double s : splits_) {
    if (!(s > 0.0 && s < 1.0)) throw InputError("quadrature: split points must lie in (0, 1)");
    breakpoints_.push_back(s);
  }
  build();
}

QuadratureRule::QuadratureRule(std::vector<double> breakpoints, std::size_t order,
                               std::size_t base_panels, std::vector<double> splits)
    : breakpoints_(std::move(breakpoints)),
      order_(order),
      base_panels_(base_panels),
      splits_(std::move(splits)) {
  build();
}

QuadratureRule QuadratureRule::on_breakpoints(std::vector<double> breakpoints, std::size_t order) {
  if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw InputError("quadrature: breakpoints must run from 0 to 1");
  }
  const std::size_t pieces = breakpoints.size() - 1;
  return QuadratureRule(std::move(breakpoints), order, pieces, {});
}

QuadratureRule QuadratureRule::with_split(double point) const {
  if (!(point >= 0.0 && point <= 1.0)) throw InputError("quadrature: split outside [0, 1]");
  std::vector<double> bps = breakpoints_;
  std::vector<double> splits = splits_;
  if (point > 0.0 && point < 1.0) {
    bps.push_back(point);
    splits.push_back(point);
  }
  return QuadratureRule(std::move(bps), order_, base_panels_, std::move(splits));
}

void QuadratureRule::build() {
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw InputError("quadrature: breakpoints must be strictly increasing");
    }
  }
  const GaussLegendre& gl = gauss_legendre(order_);
  nodes_.clear();
  weights_.clear();
  nodes_.reserve(panel_count() * order_);
  weights_.reserve(panel_count() * order_);
  for (std::size_t p = 0; p + 1 < breakpoints_.size(); ++p) {
    const double lo = breakpoints_[p];
    const double hi = breakpoints_[p + 1];
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t k = 0; k < order_; ++k) {
      nodes_.push_back(mid + half * gl.nodes[k]);
      weights_.push_back(half * gl.weights[k]);
    }
  }
}

double integrate(const std::function<double(double)>& f, const QuadratureRule& rule) {
  const auto nodes = rule.nodes();
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    values[i] = f(nodes[i]);
    if (!std::isfinite(values[i])) {
      throw EvaluationError("non-finite integrand at s = " + std::to_string(nodes[i]), nodes[i]);
    }
  }
  return simd::dot(values, rule.weights());
}

double integrate_kernel_row(const GreenKernel& kernel, double t,
                            const std::function<double(double)>& sigma,
                            const QuadratureRule& rule) {
  if (!(t >= 0.0 && t <= 1.0)) throw InputError("integrate_kernel_row: t outside [0, 1]");
  const QuadratureRule split = rule.with_split(t);
  return integrate([&](double s) { return kernel(t, s) * sigma(s); }, split);
}

}  // namespace greenbvp
