#ifndef MLP_SVG_HPP
#define MLP_SVG_HPP

#include <span>
#include <string>
#include <vector>

namespace mlp {

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal line-chart writer: axes, ticks, polylines, legend. y is plotted on
/// a log10 scale when log_y is set; non-positive values are dropped from
/// log-scaled series.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    std::span<const SvgSeries> series, bool log_y);

}  // namespace mlp

#endif  // MLP_SVG_HPP
