#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lassopath::tools {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMargin = 56;

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

struct Series {
  const char* label;
  const char* color;
  std::vector<double> values;
};

}  // namespace

std::string curves_svg(const std::vector<DiagnosticsRow>& rows) {
  std::vector<double> xs;
  for (const DiagnosticsRow& row : rows) xs.push_back(std::log10(row.lambda));

  std::vector<Series> series = {
      {"gamma", "#c0392b", {}},
      {"theta", "#2980b9", {}},
      {"l1_norm", "#27ae60", {}},
  };
  for (const DiagnosticsRow& row : rows) {
    series[0].values.push_back(row.gamma);
    series[1].values.push_back(row.theta);
    series[2].values.push_back(row.l1_norm);
  }

  double x_lo = xs.front(), x_hi = xs.back();
  double y_lo = 0.0, y_hi = -std::numeric_limits<double>::infinity();
  for (const Series& s : series) {
    for (double v : s.values) {
      if (std::isfinite(v)) y_hi = std::max(y_hi, v);
    }
  }
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;

  const auto px = [&](double x) {
    return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double y) {
    y = std::min(y, y_hi);
    return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kHeight - kMargin)
      << "\" x2=\"" << num(kWidth - kMargin) << "\" y2=\""
      << num(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kMargin)
      << "\" x2=\"" << num(kMargin) << "\" y2=\"" << num(kHeight - kMargin)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 16)
      << "\" font-size=\"13\" text-anchor=\"middle\">log10(lambda)</text>\n";

  int legend_row = 0;
  for (const Series& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(s.values[i])) continue;
      out << num(px(xs[i])) << ',' << num(py(s.values[i])) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << num(kWidth - kMargin - 90) << "\" y=\""
        << num(kMargin + 16 * legend_row) << "\" font-size=\"13\" fill=\""
        << s.color << "\">" << s.label << "</text>\n";
    ++legend_row;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace lassopath::tools
