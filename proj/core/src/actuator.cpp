#include "hyperfit/actuator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hyperfit/format.hpp"

namespace hyperfit {

std::string quantity_unit(SweepQuantity q) {
  return q == SweepQuantity::kBendingAngle ? "deg" : "N";
}

PressureSweep::PressureSweep(SweepQuantity quantity, std::vector<SweepSample> samples)
    : quantity_(quantity), samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("pressure sweep has no samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].pressure_kpa) || !std::isfinite(samples_[i].value)) {
      throw std::invalid_argument("pressure sweep contains non-finite values");
    }
    if (i > 0 && !(samples_[i].pressure_kpa > samples_[i - 1].pressure_kpa)) {
      throw std::invalid_argument("sweep pressures must be strictly increasing");
    }
  }
}

TipPose::TipPose(double initial_angle_deg, double current_angle_deg)
    : initial_(initial_angle_deg), current_(current_angle_deg) {
  auto ok = [](double a) { return std::isfinite(a) && a > -360.0 && a < 360.0; };
  if (!ok(initial_) || !ok(current_)) {
    throw std::invalid_argument("tip angles must lie in (-360, 360)");
  }
}

double bending_angle(const TipPose& pose) {
  return pose.current_angle_deg() - pose.initial_angle_deg();
}

double bending_angle(const TipPose& pose, int accumulated_turns) {
  double d = bending_angle(pose);
  // wrap into (-180, 180]
  d = std::remainder(d, 360.0);
  if (d == -180.0) d = 180.0;
  return d + 360.0 * accumulated_turns;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("interpolation needs >= 2 samples with matching sizes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
      throw std::invalid_argument("interpolation samples must be finite");
    }
    if (i > 0 && !(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("interpolation abscissae must be strictly increasing");
    }
  }

  slope_.assign(n, 0.0);
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    d[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  // One-sided secants at the ends; Fritsch-Carlson weighted harmonic mean
  // inside, zeroed at local extrema and flats. The resulting slopes stay in
  // the [0, 3]x[0, 3] monotonicity box of each interval, so every cubic
  // piece is monotone between its endpoints.
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] == 0.0 || d[k] == 0.0 || (d[k - 1] > 0.0) != (d[k] > 0.0)) {
      slope_[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      slope_[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
    }
  }
}

double MonotoneCubic::eval(double x) const {
  // bracketing interval so that x_[k] <= x <= x_[k+1]
  std::size_t k = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  if (k > 0) --k;
  if (k + 1 >= x_.size()) k = x_.size() - 2;

  if (x == x_[k]) return y_[k];          // node exactness, bit for bit
  if (x == x_[k + 1]) return y_[k + 1];

  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  const double u = 1.0 - t;
  // Hermite basis, grouped so that equal endpoint slopes reproduce a line.
  return u * u * (1.0 + 2.0 * t) * y_[k] + t * t * (1.0 + 2.0 * u) * y_[k + 1] +
         h * t * u * (u * slope_[k] - t * slope_[k + 1]);
}

double MonotoneCubic::operator()(double x) const {
  if (x < x_.front() || x > x_.back()) {
    throw std::domain_error("interpolation query outside the sampled range");
  }
  return eval(x);
}

double MonotoneCubic::extrapolate(double x) const {
  if (x < x_.front()) return y_.front() + slope_.front() * (x - x_.front());
  if (x > x_.back()) return y_.back() + slope_.back() * (x - x_.back());
  return eval(x);
}

double interpolate(const PressureSweep& sweep, double pressure_kpa,
                   bool allow_extrapolation) {
  const auto& s = sweep.samples();
  if (s.size() < 2) throw std::invalid_argument("interpolation needs >= 2 sweep samples");
  std::vector<double> p(s.size()), v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    p[i] = s[i].pressure_kpa;
    v[i] = s[i].value;
  }
  MonotoneCubic spline(std::move(p), std::move(v));
  return allow_extrapolation ? spline.extrapolate(pressure_kpa) : spline(pressure_kpa);
}

std::string sweep_headline(const PressureSweep& sweep) {
  const SweepSample& top = sweep.samples().back();
  const std::string unit =
      sweep.quantity() == SweepQuantity::kBendingAngle ? "°" : " N";
  return format_sig(top.value) + unit + " at " + format_sig(top.pressure_kpa) + " kPa";
}

ComparisonReport comparison_report(std::span<const ComparisonRow> rows) {
  if (rows.empty()) throw std::invalid_argument("comparison table needs at least one row");
  for (const auto& r : rows) {
    if (!(r.force_n >= 0.0) || !(r.pressure_kpa > 0.0)) {
      throw std::invalid_argument("comparison row '" + r.label +
                                  "': force must be >= 0 and pressure > 0");
    }
  }

  std::vector<std::string> cells;
  cells.reserve(rows.size());
  std::size_t label_width = std::string("Pneumatic actuator").size();
  for (const auto& r : rows) {
    cells.push_back(format_sig(r.force_n) + " at " + format_sig(r.pressure_kpa) + " kPa");
    label_width = std::max(label_width, r.label.size());
  }

  std::ostringstream text;
  text << "Pneumatic actuator" << std::string(label_width - 18 + 2, ' ')
       << "Blocked force [N]\n";
  std::ostringstream csv;
  csv << "label,force_N,pressure_kPa\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    text << rows[i].label << std::string(label_width - rows[i].label.size() + 2, ' ')
         << cells[i] << "\n";
    csv << rows[i].label << "," << format_sig(rows[i].force_n) << ","
        << format_sig(rows[i].pressure_kpa) << "\n";
  }
  return ComparisonReport{text.str(), csv.str()};
}

}  // namespace hyperfit
