#include "fnfpad/svg.hpp"

#include <algorithm>
#include <cmath>

#include "fnfpad/textio.hpp"

namespace fnfpad {

namespace {

constexpr int kCell = 24;
constexpr int kPad = 12;

std::string gray_fill(double v01) {
  const double c = v01 < 0.0 ? 0.0 : (v01 > 1.0 ? 1.0 : v01);
  const int g = static_cast<int>(std::lround(c * 255.0));
  const std::string s = std::to_string(g);
  return "rgb(" + s + "," + s + "," + s + ")";
}

std::string svg_open(int w, int h, const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
         "\" height=\"" + std::to_string(h) + "\">\n<title>" + title + "</title>\n";
}

}  // namespace

std::string svg_block_map(const BlockGrid& grid, const std::string& title) {
  const int w = grid.cols * kCell + 2 * kPad;
  const int h = grid.rows * kCell + 2 * kPad;
  std::string out = svg_open(w, h, title);
  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      const double v = grid.value_at(bx, by);
      out += "<rect x=\"" + std::to_string(kPad + bx * kCell) + "\" y=\"" +
             std::to_string(kPad + by * kCell) + "\" width=\"" + std::to_string(kCell) +
             "\" height=\"" + std::to_string(kCell) + "\" fill=\"" + gray_fill(v) +
             "\" data-value=\"" + format_double(v) + "\" data-valid=\"" +
             (grid.valid_at(bx, by) ? "1" : "0") + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::string svg_matrix_heatmap(const Matrix3& m, const std::string& title) {
  const int w = 3 * kCell + 2 * kPad;
  const int h = 3 * kCell + 2 * kPad;
  double max_abs = 1.0;
  for (const auto& row : m)
    for (double v : row) max_abs = std::max(max_abs, std::abs(v));
  std::string out = svg_open(w, h, title);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double v = m[r][c];
      out += "<rect x=\"" + std::to_string(kPad + c * kCell) + "\" y=\"" +
             std::to_string(kPad + r * kCell) + "\" width=\"" + std::to_string(kCell) +
             "\" height=\"" + std::to_string(kCell) + "\" fill=\"" +
             gray_fill(std::abs(v) / max_abs) + "\" data-value=\"" + format_double(v) +
             "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::string svg_profile(const std::vector<double>& values, const std::string& title,
                        const double* marker) {
  const int plot_w = 280, plot_h = 120;
  const int w = plot_w + 2 * kPad, h = plot_h + 2 * kPad;
  double lo = 0.0, hi = 1.0;
  if (!values.empty()) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = std::min(0.0, *mn);
    hi = std::max(*mx, lo + 1e-12);
  }
  if (marker) {
    lo = std::min(lo, *marker);
    hi = std::max(hi, *marker);
  }
  auto ypix = [&](double v) {
    return kPad + plot_h - (v - lo) / (hi - lo) * plot_h;
  };
  std::string out = svg_open(w, h, title);
  std::string points, data;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = values.size() > 1
                         ? kPad + static_cast<double>(i) * plot_w / (values.size() - 1)
                         : kPad + plot_w / 2.0;
    if (i) {
      points += " ";
      data += " ";
    }
    points += format_double(x) + "," + format_double(ypix(values[i]));
    data += format_double(values[i]);
  }
  out += "<polyline fill=\"none\" stroke=\"black\" points=\"" + points + "\" data-values=\"" +
         data + "\"/>\n";
  if (marker)
    out += "<line stroke=\"gray\" stroke-dasharray=\"4 2\" x1=\"" + std::to_string(kPad) +
           "\" x2=\"" + std::to_string(kPad + plot_w) + "\" y1=\"" + format_double(ypix(*marker)) +
           "\" y2=\"" + format_double(ypix(*marker)) + "\" data-value=\"" +
           format_double(*marker) + "\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace fnfpad
