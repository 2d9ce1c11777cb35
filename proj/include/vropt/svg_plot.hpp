#ifndef VROPT_SVG_PLOT_HPP
#define VROPT_SVG_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vropt/errors.hpp"

namespace vropt {

struct plot_series {
  std::string label;  // empty = omit from the legend
  int color = -1;     // palette index; -1 = position in the series list
  std::vector<std::pair<double, double>> points;  // (x, y), y plotted on log10
};

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

inline const char* plot_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[i % 8];
}

}  // namespace detail

/// Static convergence plot: linear x, log10 y, one polyline per series plus a
/// legend. Output depends only on the inputs.
inline std::string render_convergence_svg(
    const std::vector<plot_series>& series, const std::string& x_label,
    const std::string& y_label, const std::string& title = "", int width = 860,
    int height = 520) {
  const double ml = 80, mr = 200, mt = 36, mb = 56;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const plot_series& s : series)
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y) || y <= 0.0) continue;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (!(x_min < x_max)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (!(y_min < y_max)) {
    y_min = y_min > 0 && std::isfinite(y_min) ? y_min * 0.5 : 1e-12;
    y_max = y_min * 1e2;
  }
  const double ly_min = std::floor(std::log10(y_min));
  const double ly_max = std::ceil(std::log10(y_max));

  auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) {
    return mt + ph - (std::log10(y) - ly_min) / (ly_max - ly_min) * ph;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    svg += "<text x=\"" + detail::fmt2(ml + pw / 2) + "\" y=\"20\" "
           "text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";

  // y grid at decades (thinned when the range is tall)
  const int decades = static_cast<int>(ly_max - ly_min);
  const int y_stride = std::max(1, (decades + 11) / 12);
  for (int e = static_cast<int>(ly_min); e <= static_cast<int>(ly_max);
       e += y_stride) {
    const double y = py(std::pow(10.0, e));
    svg += "<line x1=\"" + detail::fmt2(ml) + "\" y1=\"" + detail::fmt2(y) +
           "\" x2=\"" + detail::fmt2(ml + pw) + "\" y2=\"" + detail::fmt2(y) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + detail::fmt2(ml - 6) + "\" y=\"" +
           detail::fmt2(y + 4) + "\" text-anchor=\"end\">1e" +
           std::to_string(e) + "</text>\n";
  }

  // x ticks: 1/2/5 ladder
  const double span = x_max - x_min;
  double step = std::pow(10.0, std::floor(std::log10(span / 5.0)));
  if (span / step > 10.0) step *= 5.0;
  else if (span / step > 5.0) step *= 2.0;
  for (double x = std::ceil(x_min / step) * step; x <= x_max + 1e-9 * span;
       x += step) {
    const double xp = px(x);
    svg += "<line x1=\"" + detail::fmt2(xp) + "\" y1=\"" + detail::fmt2(mt) +
           "\" x2=\"" + detail::fmt2(xp) + "\" y2=\"" +
           detail::fmt2(mt + ph) + "\" stroke=\"#eeeeee\"/>\n";
    svg += "<text x=\"" + detail::fmt2(xp) + "\" y=\"" +
           detail::fmt2(mt + ph + 16) + "\" text-anchor=\"middle\">" +
           detail::fmt_tick(x) + "</text>\n";
  }

  svg += "<rect x=\"" + detail::fmt2(ml) + "\" y=\"" + detail::fmt2(mt) +
         "\" width=\"" + detail::fmt2(pw) + "\" height=\"" + detail::fmt2(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + detail::fmt2(ml + pw / 2) + "\" y=\"" +
         detail::fmt2(height - 14.0) + "\" text-anchor=\"middle\">" + x_label +
         "</text>\n";
  svg += "<text x=\"18\" y=\"" + detail::fmt2(mt + ph / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         detail::fmt2(mt + ph / 2) + ")\">" + y_label + "</text>\n";

  auto color_of = [&](std::size_t i) {
    return detail::plot_color(series[i].color >= 0
                                  ? static_cast<std::size_t>(series[i].color)
                                  : i);
  };

  for (std::size_t i = 0; i < series.size(); ++i) {
    std::string pts;
    for (auto [x, y] : series[i].points) {
      if (!std::isfinite(x) || !std::isfinite(y) || y <= 0.0) continue;
      pts += detail::fmt2(px(x)) + "," + detail::fmt2(py(y)) + " ";
    }
    if (pts.empty()) continue;
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color_of(i)) +
           "\" stroke-width=\"1.6\" points=\"" + pts + "\"/>\n";
  }

  // legend: one entry per labelled series
  double ly = mt + 8;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].label.empty()) continue;
    const double lx = ml + pw + 14;
    svg += "<line x1=\"" + detail::fmt2(lx) + "\" y1=\"" + detail::fmt2(ly) +
           "\" x2=\"" + detail::fmt2(lx + 22) + "\" y2=\"" + detail::fmt2(ly) +
           "\" stroke=\"" + std::string(color_of(i)) +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + detail::fmt2(lx + 28) + "\" y=\"" +
           detail::fmt2(ly + 4) + "\">" + series[i].label + "</text>\n";
    ly += 18;
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace vropt

#endif
