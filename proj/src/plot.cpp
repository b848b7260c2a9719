#include "viag/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "viag/format.hpp"

namespace viag::io {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 78.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 42.0;
constexpr double kMarginBottom = 58.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#ff7f0e", "#9467bd", "#8c564b"};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

std::string fmt(double v) {
  // short fixed formatting for pixel coordinates
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  if (v == 0.0) return "0";
  const double mag = std::abs(v);
  char buf[32];
  if (mag >= 1e4 || mag < 1e-3) {
    std::snprintf(buf, sizeof(buf), "%.3g", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%.4g", v);
  }
  return buf;
}

Range nice_range(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

std::vector<double> ticks(double lo, double hi, int target = 6) {
  std::vector<double> out;
  const double span = hi - lo;
  if (!(span > 0.0)) return out;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  const double first = std::ceil(lo / step) * step;
  for (double t = first; t <= hi + step * 1e-9; t += step) {
    out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return out;
}

void escape_into(std::string& out, const std::string& text) {
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

void header(std::string& svg) {
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" "
         "height=\"540\" viewBox=\"0 0 860 540\">\n";
  svg += "<rect width=\"860\" height=\"540\" fill=\"white\"/>\n";
}

void axes_and_labels(std::string& svg, const PlotOptions& opts,
                     const Range& xr, const Range& yr, bool log_y) {
  const double x0 = kMarginLeft;
  const double x1 = kWidth - kMarginRight;
  const double y0 = kHeight - kMarginBottom;
  const double y1 = kMarginTop;
  auto px = [&](double v) {
    return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0);
  };
  auto py = [&](double v) {
    return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1);
  };

  for (const double t : ticks(xr.lo, xr.hi)) {
    const double x = px(t);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y0) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(y1) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y0 + 18.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\">" +
           fmt_tick(t) + "</text>\n";
  }
  for (const double t : ticks(yr.lo, yr.hi)) {
    const double y = py(t);
    svg += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(x1) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    std::string label = log_y ? ("1e" + fmt_tick(t)) : fmt_tick(t);
    svg += "<text x=\"" + fmt(x0 - 8.0) + "\" y=\"" + fmt(y + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"end\">" +
           label + "</text>\n";
  }
  svg += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y1) + "\" width=\"" +
         fmt(x1 - x0) + "\" height=\"" + fmt(y0 - y1) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  svg += "<text x=\"" + fmt((x0 + x1) / 2.0) + "\" y=\"" +
         fmt(kHeight - 14.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\">";
  escape_into(svg, opts.x_label);
  svg += "</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt((y0 + y1) / 2.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         fmt((y0 + y1) / 2.0) + ")\">";
  escape_into(svg, opts.y_label + (log_y ? " (log10)" : ""));
  svg += "</text>\n";
  svg += "<text x=\"" + fmt((x0 + x1) / 2.0) + "\" y=\"26\" "
         "font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">";
  escape_into(svg, opts.title);
  svg += "</text>\n";
}

}  // namespace

std::string line_plot_svg(const std::vector<PlotSeries>& series,
                          const PlotOptions& options) {
  if (series.empty()) {
    throw std::invalid_argument("line_plot_svg: no series");
  }
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -y_lo;
  auto transform_y = [&](double y) {
    return options.log_y ? std::log10(y) : y;
  };
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("line_plot_svg: ragged series '" + s.label +
                                  "'");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (options.log_y && !(s.y[i] > 0.0)) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, transform_y(s.y[i]));
      y_hi = std::max(y_hi, transform_y(s.y[i]));
    }
  }
  if (!std::isfinite(x_lo) || !std::isfinite(y_lo)) {
    throw std::invalid_argument("line_plot_svg: no plottable points");
  }
  const Range xr = nice_range(x_lo, x_hi);
  const Range yr = nice_range(y_lo, y_hi);

  std::string svg;
  header(svg);
  axes_and_labels(svg, options, xr, yr, options.log_y);

  const double x0 = kMarginLeft;
  const double x1 = kWidth - kMarginRight;
  const double y0 = kHeight - kMarginBottom;
  const double y1 = kMarginTop;
  auto px = [&](double v) {
    return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0);
  };
  auto py = [&](double v) {
    return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1);
  };

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(*kPalette))];
    std::string points;
    bool pen_down = false;
    std::string path;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (options.log_y && !(s.y[i] > 0.0)) {
        pen_down = false;
        continue;
      }
      path += pen_down ? 'L' : 'M';
      path += fmt(px(s.x[i]));
      path += ' ';
      path += fmt(py(transform_y(s.y[i])));
      pen_down = true;
    }
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.6\"/>\n";
  }

  // legend
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(*kPalette))];
    const double ly = kMarginTop + 16.0 + 18.0 * static_cast<double>(k);
    svg += "<line x1=\"" + fmt(x1 - 150.0) + "\" y1=\"" + fmt(ly) +
           "\" x2=\"" + fmt(x1 - 122.0) + "\" y2=\"" + fmt(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(x1 - 116.0) + "\" y=\"" + fmt(ly + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">";
    escape_into(svg, series[k].label);
    svg += "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string heatmap_svg(const std::vector<double>& x_grid,
                        const std::vector<double>& y_grid,
                        const std::vector<double>& values,
                        const PlotOptions& options) {
  if (x_grid.empty() || y_grid.empty() ||
      values.size() != x_grid.size() * y_grid.size()) {
    throw std::invalid_argument("heatmap_svg: grid/value size mismatch");
  }
  const std::size_t x_stride = std::max<std::size_t>(1, x_grid.size() / 200);
  const std::size_t y_stride = std::max<std::size_t>(1, y_grid.size() / 200);

  double v_lo = values[0];
  double v_hi = values[0];
  for (const double v : values) {
    v_lo = std::min(v_lo, v);
    v_hi = std::max(v_hi, v);
  }
  if (!(v_hi > v_lo)) v_hi = v_lo + 1.0;

  // dark blue -> yellow ramp
  auto color = [&](double v) {
    const double t = std::clamp((v - v_lo) / (v_hi - v_lo), 0.0, 1.0);
    const int r = static_cast<int>(std::lround(20.0 + 235.0 * t));
    const int g = static_cast<int>(std::lround(25.0 + 205.0 * t));
    const int b = static_cast<int>(std::lround(90.0 - 40.0 * t));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };

  const Range xr = {x_grid.front(), x_grid.back()};
  const Range yr = {y_grid.front(), y_grid.back()};
  const double x0 = kMarginLeft;
  const double x1 = kWidth - kMarginRight;
  const double y0 = kHeight - kMarginBottom;
  const double y1 = kMarginTop;
  auto px = [&](double v) {
    return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0);
  };
  auto py = [&](double v) {
    return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1);
  };

  std::string svg;
  header(svg);
  for (std::size_t i = 0; i < x_grid.size(); i += x_stride) {
    const std::size_t i_next = std::min(i + x_stride, x_grid.size() - 1);
    for (std::size_t j = 0; j < y_grid.size(); j += y_stride) {
      const std::size_t j_next = std::min(j + y_stride, y_grid.size() - 1);
      const double cx0 = px(x_grid[i]);
      const double cx1 = i_next == i ? cx0 + 2.0 : px(x_grid[i_next]);
      const double cy1 = py(y_grid[j]);
      const double cy0 = j_next == j ? cy1 - 2.0 : py(y_grid[j_next]);
      svg += "<rect x=\"" + fmt(cx0) + "\" y=\"" + fmt(cy0) + "\" width=\"" +
             fmt(std::max(cx1 - cx0, 0.5)) + "\" height=\"" +
             fmt(std::max(cy1 - cy0, 0.5)) + "\" fill=\"" +
             color(values[i * y_grid.size() + j]) + "\"/>\n";
    }
  }
  axes_and_labels(svg, options, xr, yr, false);
  svg += "</svg>\n";
  return svg;
}

}  // namespace viag::io
