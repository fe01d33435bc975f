#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace curenet::cli {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 20, kBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;

  double map(double v) const {
    double a = log ? std::log10(v) : v;
    double l = log ? std::log10(lo) : lo;
    double h = log ? std::log10(hi) : hi;
    return h > l ? (a - l) / (h - l) : 0.5;
  }
};

Axis fit(const std::vector<Series>& series, bool use_x) {
  Axis axis;
  bool any = false, positive = true;
  for (const auto& s : series) {
    for (double v : use_x ? s.x : s.y) {
      if (!std::isfinite(v)) continue;
      if (!any) axis.lo = axis.hi = v;
      axis.lo = std::min(axis.lo, v);
      axis.hi = std::max(axis.hi, v);
      positive = positive && v > 0;
      any = true;
    }
  }
  if (!any) return axis;
  axis.log = positive && axis.hi > axis.lo;
  if (!axis.log && axis.hi == axis.lo) axis.hi = axis.lo + 1;
  return axis;
}

}  // namespace

void write_line_chart(std::ostream& out, const std::vector<Series>& series,
                      const std::string& x_label, const std::string& y_label) {
  const Axis xa = fit(series, true);
  const Axis ya = fit(series, false);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + xa.map(v) * pw; };
  auto py = [&](double v) { return kTop + (1 - ya.map(v)) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double f = i / 4.0;
    double xv = xa.log ? std::pow(10, std::log10(xa.lo) + f * (std::log10(xa.hi) - std::log10(xa.lo)))
                       : xa.lo + f * (xa.hi - xa.lo);
    double yv = ya.log ? std::pow(10, std::log10(ya.lo) + f * (std::log10(ya.hi) - std::log10(ya.lo)))
                       : ya.lo + f * (ya.hi - ya.lo);
    out << "<text x=\"" << num(kLeft + f * pw) << "\" y=\"" << num(kTop + ph + 16)
        << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(kTop + (1 - f) * ph + 4)
        << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10)
      << "\" text-anchor=\"middle\">" << escape(x_label) << (xa.log ? " (log)" : "") << "</text>\n";
  out << "<text transform=\"translate(14," << num(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << (ya.log ? " (log)" : "")
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    std::string points;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      double x = series[s].x[i], y = series[s].y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((xa.log && x <= 0) || (ya.log && y <= 0)) continue;
      if (!points.empty()) points += ' ';
      points += num(px(x)) + ',' + num(py(y));
      out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\""
          << colour << "\"/>\n";
    }
    if (!points.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"" << points << "\"/>\n";
    }
    double ly = kTop + 12 + 16.0 * static_cast<double>(s);
    out << "<line x1=\"" << num(kWidth - kRight + 12) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << num(kWidth - kRight + 30) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour
        << "\"/>\n";
    out << "<text x=\"" << num(kWidth - kRight + 34) << "\" y=\"" << num(ly) << "\">"
        << escape(series[s].label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace curenet::cli
