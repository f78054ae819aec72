#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace greenbvp::cli {

// values[i * n + j] is the value at (x_i, y_j) on an n x n mesh of [0,1]^2.
void write_heatmap_svg(std::ostream& out, const std::vector<double>& values, std::size_t n,
                       const std::string& title);

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

void write_line_svg(std::ostream& out, const std::vector<Series>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label);

}  // namespace greenbvp::cli
