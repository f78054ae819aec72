#include "cli/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace greenbvp::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Diverging blue-white-red map on [-1, 1].
std::string color(double v) {
  v = std::clamp(v, -1.0, 1.0);
  int r = 255;
  int g = 255;
  int b = 255;
  if (v >= 0) {
    g = b = static_cast<int>(std::lround(255.0 * (1.0 - v)));
  } else {
    r = g = static_cast<int>(std::lround(255.0 * (1.0 + v)));
  }
  return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
}

void header(std::ostream& out, const std::string& title) {
  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << fmt::format("<text x=\"{}\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"16\">{}</text>\n",
                     kWidth / 2, escape(title));
}

}  // namespace

void write_heatmap_svg(std::ostream& out, const std::vector<double>& values, std::size_t n,
                       const std::string& title) {
  header(out, title);
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  const double side = kHeight - 2 * kMargin;
  const double cell = side / static_cast<double>(n);
  const double x0 = (kWidth - side) / 2;
  // x axis is s, y axis is t (t = 0 at the bottom).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = x0 + static_cast<double>(j) * cell;
      const double y = kMargin + static_cast<double>(n - 1 - i) * cell;
      out << fmt::format("<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\" fill=\"{}\"/>\n",
                         x, y, cell + 0.01, cell + 0.01, color(values[i * n + j] / scale));
    }
  }
  out << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"12\">s</text>\n",
                     kWidth / 2, kHeight - kMargin / 3);
  out << fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">t</text>\n",
                     x0 - 20, kHeight / 2);
  out << fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">"
                     "max |G| = {:.6g} (red positive, blue negative)</text>\n",
                     x0, kHeight - 8, scale);
  out << "</svg>\n";
}

void write_line_svg(std::ostream& out, const std::vector<Series>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label) {
  header(out, title);
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmax > xmin)) xmin -= 0.5, xmax += 0.5;
  if (!(ymax > ymin)) ymin -= 0.5, ymax += 0.5;
  const double pw = kWidth - 2 * kMargin;
  const double ph = kHeight - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kHeight - kMargin - (y - ymin) / (ymax - ymin) * ph; };

  out << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                     kMargin, kMargin, pw, ph);
  if (ymin < 0 && ymax > 0) {
    out << fmt::format("<line x1=\"{}\" y1=\"{:.3f}\" x2=\"{}\" y2=\"{:.3f}\" stroke=\"#999\" "
                       "stroke-dasharray=\"4 3\"/>\n",
                       kMargin, py(0), kMargin + pw, py(0));
  }
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::string points;
    for (std::size_t i = 0; i < series[k].x.size(); ++i) {
      if (!std::isfinite(series[k].y[i])) continue;
      points += fmt::format("{:.3f},{:.3f} ", px(series[k].x[i]), py(series[k].y[i]));
    }
    out << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                       palette[k % 4], points);
  }
  for (int i = 0; i <= 4; ++i) {
    const double x = xmin + (xmax - xmin) * i / 4.0;
    const double y = ymin + (ymax - ymin) * i / 4.0;
    out << fmt::format("<text x=\"{:.3f}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"11\">{:.4g}</text>\n",
                       px(x), kHeight - kMargin + 16, x);
    out << fmt::format("<text x=\"{}\" y=\"{:.3f}\" text-anchor=\"end\" font-family=\"sans-serif\" "
                       "font-size=\"11\">{:.4g}</text>\n",
                       kMargin - 6, py(y) + 4, y);
  }
  out << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"12\">{}</text>\n",
                     kWidth / 2, kHeight - 12, escape(x_label));
  out << fmt::format("<text x=\"16\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" "
                     "transform=\"rotate(-90 16 {})\" text-anchor=\"middle\">{}</text>\n",
                     kHeight / 2, kHeight / 2, escape(y_label));
  out << "</svg>\n";
}

}  // namespace greenbvp::cli
