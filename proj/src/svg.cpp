#include "mlp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mlp {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 440;
constexpr int kMarginL = 70;
constexpr int kMarginR = 20;
constexpr int kMarginT = 40;
constexpr int kMarginB = 50;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    std::span<const SvgSeries> series, bool log_y) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double yv = s.y[i];
      if (log_y && yv <= 0.0) continue;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      const double ty = log_y ? std::log10(yv) : yv;
      y_min = std::min(y_min, ty);
      y_max = std::max(y_max, ty);
    }
  }
  if (!(x_min <= x_max)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (!(y_min <= y_max)) {
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto px = [&](double x) {
    return kMarginL + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double y) {
    const double t = log_y ? std::log10(y) : y;
    return kMarginT + (1.0 - (t - y_min) / (y_max - y_min)) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << escape(title)
      << "</text>\n";

  // frame
  svg << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
      << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // x ticks at data-range quarters, y ticks at decades (log) or quarters
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    svg << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << num(kMarginT + plot_h)
        << "\" x2=\"" << num(px(xv)) << "\" y2=\"" << num(kMarginT + plot_h + 5)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(kMarginT + plot_h + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << num(xv) << "</text>\n";
  }
  if (log_y) {
    for (int e = static_cast<int>(std::ceil(y_min));
         e <= static_cast<int>(std::floor(y_max)); ++e) {
      const double yv = std::pow(10.0, e);
      svg << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << num(py(yv))
          << "\" x2=\"" << kMarginL << "\" y2=\"" << num(py(yv))
          << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << kMarginL - 8 << "\" y=\"" << num(py(yv) + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
          << "1e" << e << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double yv = y_min + (y_max - y_min) * i / 4.0;
      svg << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << num(py(yv))
          << "\" x2=\"" << kMarginL << "\" y2=\"" << num(py(yv))
          << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << kMarginL - 8 << "\" y=\"" << num(py(yv) + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
          << num(yv) << "</text>\n";
    }
  }

  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << escape(y_label)
      << "</text>\n";

  int legend_row = 0;
  for (const auto& s : series) {
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && s.y[i] <= 0.0) continue;
      pts << num(px(s.x[i])) << "," << num(py(s.y[i])) << " ";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && s.y[i] <= 0.0) continue;
      svg << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
          << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    }
    const int ly = kMarginT + 14 + 18 * legend_row++;
    svg << "<line x1=\"" << kMarginL + plot_w - 150 << "\" y1=\"" << ly - 4
        << "\" x2=\"" << kMarginL + plot_w - 125 << "\" y2=\"" << ly - 4
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kMarginL + plot_w - 118 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
        << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_svg_plot: cannot open " + path);
  out << svg.str();
}

}  // namespace mlp
