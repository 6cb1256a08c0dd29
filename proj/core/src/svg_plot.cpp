#include "pagraph/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "pagraph/errors.hpp"

namespace pagraph {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginL = 64.0;
constexpr double kMarginR = 24.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 48.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_line_plot_svg(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         std::span<const PlotSeries> series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!std::isfinite(xmin) || !std::isfinite(ymin)) {
    xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto px = [&](double x) { return kMarginL + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return kMarginT + (ymax - y) / (ymax - ymin) * plot_h; };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("svg: cannot open '" + path + "' for writing");

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth)
      << "\" height=\"" << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth)
      << " " << fmt(kHeight) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // axes
  out << "<line x1=\"" << fmt(kMarginL) << "\" y1=\"" << fmt(kMarginT)
      << "\" x2=\"" << fmt(kMarginL) << "\" y2=\"" << fmt(kHeight - kMarginB)
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << fmt(kMarginL) << "\" y1=\"" << fmt(kHeight - kMarginB)
      << "\" x2=\"" << fmt(kWidth - kMarginR) << "\" y2=\""
      << fmt(kHeight - kMarginB) << "\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    out << "<line x1=\"" << fmt(px(fx)) << "\" y1=\"" << fmt(kHeight - kMarginB)
        << "\" x2=\"" << fmt(px(fx)) << "\" y2=\"" << fmt(kHeight - kMarginB + 5)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(px(fx)) << "\" y=\"" << fmt(kHeight - kMarginB + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(fx) << "</text>\n"
        << "<line x1=\"" << fmt(kMarginL - 5) << "\" y1=\"" << fmt(py(fy))
        << "\" x2=\"" << fmt(kMarginL) << "\" y2=\"" << fmt(py(fy))
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(kMarginL - 8) << "\" y=\"" << fmt(py(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(fy) << "</text>\n";
  }

  out << "<text x=\"" << fmt(kMarginL + plot_w / 2) << "\" y=\""
      << fmt(kHeight - 10)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << x_label << "</text>\n"
      << "<text x=\"16\" y=\"" << fmt(kMarginT + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 " << fmt(kMarginT + plot_h / 2) << ")\">"
      << y_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (i) out << ' ';
      out << fmt(px(series[s].x[i])) << ',' << fmt(py(series[s].y[i]));
    }
    out << "\"/>\n";
    const double ly = kMarginT + 14.0 * static_cast<double>(s) + 4.0;
    out << "<line x1=\"" << fmt(kWidth - kMarginR - 110) << "\" y1=\"" << fmt(ly)
        << "\" x2=\"" << fmt(kWidth - kMarginR - 90) << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << fmt(kWidth - kMarginR - 84) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].name
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw ParseError("svg: write failed for '" + path + "'");
}

}  // namespace pagraph
