#include "greenbvp/integral_operator.hpp"

#include "greenbvp/error.hpp"
#include "greenbvp/parallel.hpp"
#include "greenbvp/quadrature.hpp"
#include "greenbvp/simd.hpp"

namespace greenbvp {

IntegralOperator::IntegralOperator(const GreenKernel& kernel, std::vector<double> grid,
                                   std::size_t nodes_per_cell)
    : grid_(std::move(grid)) {
  // Validates the grid.
  const SolutionProfile check(grid_, std::vector<double>(grid_.size(), 0.0));
  (void)check;
  const QuadratureRule rule = QuadratureRule::on_breakpoints(grid_, nodes_per_cell);
  nodes_.assign(rule.nodes().begin(), rule.nodes().end());
  const auto weights = rule.weights();
  const std::size_t nr = rows();
  const std::size_t nc = cols();
  matrix_.resize(nr * nc);
  parallel_for(0, nr, [&](std::size_t i) {
    double* row = matrix_.data() + i * nc;
    const double t = grid_[i];
    for (std::size_t j = 0; j < nc; ++j) row[j] = weights[j] * kernel(t, nodes_[j]);
  });
  stencils_.resize(nc);
  for (std::size_t j = 0; j < nc; ++j) stencils_[j] = cubic_stencil(grid_, nodes_[j]);
}

void IntegralOperator::to_nodes(std::span<const double> v, std::span<double> out) const {
  if (v.size() != rows() || out.size() != cols()) {
    throw InputError("IntegralOperator::to_nodes: size mismatch");
  }
  for (std::size_t j = 0; j < stencils_.size(); ++j) {
    const InterpStencil& st = stencils_[j];
    out[j] = st.w[0] * v[st.first] + st.w[1] * v[st.first + 1] + st.w[2] * v[st.first + 2] +
             st.w[3] * v[st.first + 3];
  }
}

void IntegralOperator::apply(std::span<const double> sigma, std::span<double> out) const {
  if (sigma.size() != cols() || out.size() != rows()) {
    throw InputError("IntegralOperator::apply: size mismatch");
  }
  simd::matvec(matrix_, rows(), cols(), sigma, out);
}

}  // namespace greenbvp
