#include "hyperfit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hyperfit/format.hpp"

namespace hyperfit {
namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

// Round the tick step to 1/2/5 times a power of ten.
double nice_step(double span, int target_ticks) {
  if (span <= 0.0) return 1.0;
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step;
  if (norm <= 1.5) step = 1.0;
  else if (norm <= 3.5) step = 2.0;
  else if (norm <= 7.5) step = 5.0;
  else step = 10.0;
  return step * mag;
}

}  // namespace

SvgLinePlot::SvgLinePlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgLinePlot::add_series(SvgSeries series) {
  if (series.x.size() != series.y.size()) {
    throw std::invalid_argument("series x/y size mismatch");
  }
  if (series.x.empty()) throw std::invalid_argument("series has no points");
  series_.push_back(std::move(series));
}

void SvgLinePlot::add_vertical_marker(double x, std::string caption) {
  markers_.push_back({x, std::move(caption)});
}

std::string SvgLinePlot::render(double width, double height) const {
  if (series_.empty()) throw std::invalid_argument("plot has no series");

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series_) {
    for (double v : s.x) { x_min = std::min(x_min, v); x_max = std::max(x_max, v); }
    for (double v : s.y) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
  }
  for (const auto& m : markers_) { x_min = std::min(x_min, m.x); x_max = std::max(x_max, m.x); }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  // headroom so curves do not touch the frame
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double left = 64.0, right = 16.0, top = 34.0, bottom = 48.0;
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  const auto map_x = [&](double v) { return left + (v - x_min) / (x_max - x_min) * pw; };
  const auto map_y = [&](double v) { return top + (y_max - v) / (y_max - y_min) * ph; };
  const auto num = [](double v) { return format_sig(v); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
    << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
    << "\" fill=\"white\"/>\n";
  s << "<text x=\"" << num(width / 2) << "\" y=\"20\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"14\">"
    << escape_xml(title_) << "</text>\n";

  // frame
  s << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks and grid
  const double xstep = nice_step(x_max - x_min, 6);
  for (double t = std::ceil(x_min / xstep) * xstep; t <= x_max + 1e-9 * xstep; t += xstep) {
    const double px = map_x(t);
    s << "<line x1=\"" << num(px) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(px)
      << "\" y2=\"" << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << num(px) << "\" y=\"" << num(top + ph + 18)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
      << "</text>\n";
  }
  const double ystep = nice_step(y_max - y_min, 6);
  for (double t = std::ceil(y_min / ystep) * ystep; t <= y_max + 1e-9 * ystep; t += ystep) {
    const double py = map_y(t);
    s << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(left)
      << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
      << "</text>\n";
  }

  // axis labels
  s << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 8)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
    << escape_xml(x_label_) << "</text>\n";
  s << "<text x=\"14\" y=\"" << num(top + ph / 2)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
       "transform=\"rotate(-90 14 "
    << num(top + ph / 2) << ")\">" << escape_xml(y_label_) << "</text>\n";

  for (const auto& m : markers_) {
    const double px = map_x(m.x);
    s << "<line x1=\"" << num(px) << "\" y1=\"" << num(top) << "\" x2=\"" << num(px)
      << "\" y2=\"" << num(top + ph) << "\" stroke=\"#999999\" stroke-dasharray=\"5,4\"/>\n";
    s << "<text x=\"" << num(px + 4) << "\" y=\"" << num(top + 14)
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">"
      << escape_xml(m.caption) << "</text>\n";
  }

  for (const auto& ser : series_) {
    if (ser.line && ser.x.size() > 1) {
      s << "<polyline fill=\"none\" stroke=\"" << ser.color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < ser.x.size(); ++i) {
        if (i) s << " ";
        s << num(map_x(ser.x[i])) << "," << num(map_y(ser.y[i]));
      }
      s << "\"/>\n";
    }
    if (ser.markers) {
      for (std::size_t i = 0; i < ser.x.size(); ++i) {
        s << "<circle cx=\"" << num(map_x(ser.x[i])) << "\" cy=\"" << num(map_y(ser.y[i]))
          << "\" r=\"2.5\" fill=\"" << ser.color << "\"/>\n";
      }
    }
  }

  // legend (only when labels are given)
  double ly = top + 14.0;
  for (const auto& ser : series_) {
    if (ser.label.empty()) continue;
    const double lx = left + pw - 150.0;
    s << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 22)
      << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << ser.color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(ser.label)
      << "</text>\n";
    ly += 16.0;
  }

  s << "</svg>\n";
  return s.str();
}

}  // namespace hyperfit
