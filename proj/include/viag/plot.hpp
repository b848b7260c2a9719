#pragma once

#include <string>
#include <vector>

namespace viag::io {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
};

/// Self-contained SVG line plot, one polyline per series, deterministic
/// bytes for identical inputs (no timestamps, fixed palette and layout).
std::string line_plot_svg(const std::vector<PlotSeries>& series,
                          const PlotOptions& options);

/// SVG cell heatmap of row-major values on an (x, y) grid; large grids are
/// stride-subsampled to at most ~200 cells per axis.
std::string heatmap_svg(const std::vector<double>& x_grid,
                        const std::vector<double>& y_grid,
                        const std::vector<double>& values,
                        const PlotOptions& options);

}  // namespace viag::io
