#include "lobmimic/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lobmimic {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 30;
constexpr double kBottom = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Scale {
  double lo;
  double hi;
  double px_lo;
  double px_hi;
  [[nodiscard]] double operator()(double v) const {
    return hi == lo ? 0.5 * (px_lo + px_hi) : px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

void header(std::ostringstream& s) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void y_axis(std::ostringstream& s, const Scale& y) {
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
    << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = y.lo + (y.hi - y.lo) * i / 4.0;
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y(v) + 4) << "\" text-anchor=\"end\">"
      << num(v) << "</text>\n";
  }
}

}  // namespace

std::string box_plot_svg(const std::vector<BoxSeries>& series, const std::string& y_label) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& b : series) {
    lo = std::min({lo, b.stats.whisker_lo, b.stats.q1});
    hi = std::max({hi, b.stats.whisker_hi, b.stats.q3});
  }
  if (series.empty()) lo = hi = 0;
  const double pad = (hi - lo) * 0.05 + 1e-9;
  const Scale y{lo - pad, hi + pad, kHeight - kBottom, kTop};
  std::ostringstream s;
  header(s);
  y_axis(s, y);
  s << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 " << kHeight / 2
    << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  const double slot = (kWidth - kLeft - kRight) / std::max<std::size_t>(1, series.size());
  static const char* colours[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"};
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& st = series[i].stats;
    const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double half = std::min(60.0, slot * 0.25);
    const char* colour = colours[i % 4];
    s << "<line x1=\"" << num(cx) << "\" y1=\"" << num(y(st.whisker_lo)) << "\" x2=\"" << num(cx)
      << "\" y2=\"" << num(y(st.whisker_hi)) << "\" stroke=\"black\"/>\n";
    for (double w : {st.whisker_lo, st.whisker_hi}) {
      s << "<line x1=\"" << num(cx - half / 2) << "\" y1=\"" << num(y(w)) << "\" x2=\""
        << num(cx + half / 2) << "\" y2=\"" << num(y(w)) << "\" stroke=\"black\"/>\n";
    }
    s << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(y(st.q3)) << "\" width=\""
      << num(2 * half) << "\" height=\"" << num(y(st.q1) - y(st.q3)) << "\" fill=\"" << colour
      << "\" fill-opacity=\"0.6\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(y(st.median)) << "\" x2=\""
      << num(cx + half) << "\" y2=\"" << num(y(st.median)) << "\" stroke=\"black\" "
      << "stroke-width=\"2\"/>\n";
    s << "<text x=\"" << num(cx) << "\" y=\"" << kHeight - kBottom + 20
      << "\" text-anchor=\"middle\">" << series[i].label << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string line_chart_svg(const std::vector<LineSeries>& series, const std::string& title) {
  double xlo = std::numeric_limits<double>::infinity();
  double xhi = -xlo;
  double ylo = xlo;
  double yhi = -xlo;
  for (const auto& l : series) {
    for (double v : l.x) {
      xlo = std::min(xlo, v);
      xhi = std::max(xhi, v);
    }
    for (double v : l.y) {
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
  }
  if (xlo > xhi) xlo = xhi = ylo = yhi = 0;
  const Scale x{xlo, xhi, kLeft, kWidth - kRight};
  const Scale y{ylo, yhi, kHeight - kBottom, kTop};
  std::ostringstream s;
  header(s);
  y_axis(s, y);
  s << "<text x=\"" << kWidth / 2 << "\" y=\"18\" text-anchor=\"middle\">" << title << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& l = series[i];
    s << "<polyline fill=\"none\" stroke=\"" << l.colour << "\" stroke-width=\"1\" points=\"";
    for (std::size_t k = 0; k < std::min(l.x.size(), l.y.size()); ++k) {
      s << (k ? " " : "") << num(x(l.x[k])) << ',' << num(y(l.y[k]));
    }
    s << "\"/>\n";
    s << "<text x=\"" << kLeft + 10 + 150 * static_cast<double>(i) << "\" y=\""
      << kHeight - 15 << "\" fill=\"" << l.colour << "\">" << l.label << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace lobmimic
