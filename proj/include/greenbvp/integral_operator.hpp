#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "greenbvp/kernel.hpp"
#include "greenbvp/profile.hpp"

namespace greenbvp {

// Discretization of v(t_i) = int_0^1 G(t_i, s) sigma(s) ds on a fixed grid.
// Every grid cell is one Gauss-Legendre panel, so the kink at s = t_i always
// falls on a panel boundary. Grid data are carried to the nodes with the
// local cubic interpolant of SolutionProfile.
class IntegralOperator {
 public:
  IntegralOperator(const GreenKernel& kernel, std::vector<double> grid,
                   std::size_t nodes_per_cell = 4);

  std::size_t rows() const noexcept { return grid_.size(); }
  std::size_t cols() const noexcept { return nodes_.size(); }
  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  // Row-major rows() x cols(), entries w_j G(t_i, s_j).
  const std::vector<double>& matrix() const noexcept { return matrix_; }
  const std::vector<InterpStencil>& stencils() const noexcept { return stencils_; }

  // Node values of the interpolant of grid data.
  void to_nodes(std::span<const double> grid_values, std::span<double> node_values) const;
  // out_i = sum_j K_ij sigma_j.
  void apply(std::span<const double> node_sigma, std::span<double> out) const;

 private:
  std::vector<double> grid_;
  std::vector<double> nodes_;
  std::vector<double> matrix_;
  std::vector<InterpStencil> stencils_;
};

}  // namespace greenbvp
