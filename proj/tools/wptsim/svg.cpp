#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace wpt::cli {
namespace {

constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::vector<double>& x, const std::vector<Series>& series) {
  const double width = 720, height = 420, left = 60, right = 160, top = 40, bottom = 50;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  double xmin = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  double xmax = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
  double ymin = 0.0;
  double ymax = std::numeric_limits<double>::lowest();
  for (const auto& s : series) {
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  const auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double v) { return top + ph - (v - ymin) / (ymax - ymin) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(left) + "\" y=\"24\" font-size=\"14\">" + escape(title) + "</text>\n";
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" +
         num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    out += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(top + ph + 16) +
           "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(yv) + 4) +
           "\" text-anchor=\"end\">" + num(yv) + "</text>\n";
  }
  out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 12) +
         "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    std::string pts;
    for (std::size_t i = 0; i < x.size() && i < series[k].y.size(); ++i) {
      pts += num(px(x[i])) + "," + num(py(series[k].y[i])) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
           pts + "\"/>\n";
    const double ly = top + 14.0 + 16.0 * static_cast<double>(k);
    out += "<line x1=\"" + num(left + pw + 10) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(left + pw + 30) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\"/>\n";
    out += "<text x=\"" + num(left + pw + 36) + "\" y=\"" + num(ly) + "\">" + escape(series[k].label) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace wpt::cli
