#pragma once

#include <string>
#include <vector>

namespace wpt::cli {

struct Series {
  std::string label;
  std::vector<double> y;
};

// Minimal line chart; x shared by all series.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::vector<double>& x, const std::vector<Series>& series);

}  // namespace wpt::cli
