#pragma once

#include <string>
#include <vector>

#include "lobmimic/stats.hpp"

namespace lobmimic {

struct BoxSeries {
  std::string label;
  SummaryStats stats;
};

/// Box-and-whisker chart: box spans the quartiles, line at the median,
/// whiskers at mean +/- 2 sd.
std::string box_plot_svg(const std::vector<BoxSeries>& series, const std::string& y_label);

struct LineSeries {
  std::string label;
  std::string colour;
  std::vector<double> x;
  std::vector<double> y;
};

std::string line_chart_svg(const std::vector<LineSeries>& series, const std::string& title);

}  // namespace lobmimic
