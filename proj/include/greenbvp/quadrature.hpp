#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "greenbvp/kernel.hpp"

namespace greenbvp {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per order; order in [1, 64].
const GaussLegendre& gauss_legendre(std::size_t order);

inline constexpr std::size_t kDefaultPanels = 16;
inline constexpr std::size_t kDefaultOrder = 8;

// Composite Gauss-Legendre rule on [0, 1]: `panels` equal panels, each
// further cut at the split points, with `order` nodes per resulting piece.
class QuadratureRule {
 public:
  explicit QuadratureRule(std::size_t panels = kDefaultPanels, std::size_t order = kDefaultOrder,
                          std::vector<double> split_points = {});

  // Pieces delimited by an explicit sorted breakpoint list 0 = b0 < ... < bk = 1.
  static QuadratureRule on_breakpoints(std::vector<double> breakpoints, std::size_t order);

  // Same rule with one more split point.
  QuadratureRule with_split(double point) const;

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::size_t panel_count() const noexcept { return breakpoints_.size() - 1; }
  std::size_t order() const noexcept { return order_; }
  std::size_t base_panels() const noexcept { return base_panels_; }
  const std::vector<double>& split_points() const noexcept { return splits_; }

 private:
  QuadratureRule(std::vector<double> breakpoints, std::size_t order, std::size_t base_panels,
                 std::vector<double> splits);
  void build();

  std::vector<double> breakpoints_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::size_t order_;
  std::size_t base_panels_;
  std::vector<double> splits_;
};

// Throws EvaluationError (carrying the node) if f is not finite at a node.
double integrate(const std::function<double(double)>& f, const QuadratureRule& rule);

// int_0^1 G(t, s) sigma(s) ds with the kink at s = t on a panel boundary.
double integrate_kernel_row(const GreenKernel& kernel, double t,
                            const std::function<double(double)>& sigma,
                            const QuadratureRule& rule = QuadratureRule());

}  // namespace greenbvp
