#pragma once

#include <span>
#include <string>
#include <vector>

namespace pagraph {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Standalone SVG line plot: axes, ticks, one polyline per series, legend.
// Output bytes are a pure function of the inputs.
void write_line_plot_svg(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         std::span<const PlotSeries> series);

}  // namespace pagraph
