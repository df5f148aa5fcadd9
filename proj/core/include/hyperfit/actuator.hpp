#pragma once

#include <span>
#include <string>
#include <vector>

namespace hyperfit {

enum class SweepQuantity { kBendingAngle, kBlockedForce };

/// Unit suffix used in reports: "deg" or "N".
std::string quantity_unit(SweepQuantity q);

struct SweepSample {
  double pressure_kpa;
  double value;
};

/// Ordered (pressure, response) series of one actuator characterization
/// run. Pressures must be strictly increasing and finite. The tested
/// envelope tops out at 25 kPa; samples and queries beyond it are legal
/// but reported as extrapolation.
class PressureSweep {
 public:
  static constexpr double kTestedMinPressureKpa = 0.0;
  static constexpr double kTestedMaxPressureKpa = 25.0;

  PressureSweep(SweepQuantity quantity, std::vector<SweepSample> samples);

  SweepQuantity quantity() const { return quantity_; }
  const std::vector<SweepSample>& samples() const { return samples_; }
  double min_pressure() const { return samples_.front().pressure_kpa; }
  double max_pressure() const { return samples_.back().pressure_kpa; }

  static bool in_tested_range(double pressure_kpa) {
    return pressure_kpa >= kTestedMinPressureKpa && pressure_kpa <= kTestedMaxPressureKpa;
  }

 private:
  SweepQuantity quantity_;
  std::vector<SweepSample> samples_;
};

/// Tip orientation before and after pressurization, degrees. Both angles
/// must lie in (-360, 360).
class TipPose {
 public:
  TipPose(double initial_angle_deg, double current_angle_deg);

  double initial_angle_deg() const { return initial_; }
  double current_angle_deg() const { return current_; }

 private:
  double initial_;
  double current_;
};

/// Bending angle as the plain tip angle difference, current - initial.
double bending_angle(const TipPose& pose);

/// Bending angle normalized to (-180, 180] plus 360 deg per declared full
/// turn. Use only when the caller knows the motion wrapped; the plain
/// difference is the default because the measured maximum (170.3 deg)
/// never wraps.
double bending_angle(const TipPose& pose, int accumulated_turns);

/// Shape-preserving piecewise-cubic Hermite interpolant with
/// Fritsch-Carlson slope limiting: exact at the nodes, no overshoot
/// between them, monotone wherever the data is monotone.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  /// Evaluates inside [x.front(), x.back()]; throws std::domain_error
  /// outside.
  double operator()(double x) const;

  /// Evaluation with linear extrapolation beyond the data range, using
  /// the limited endpoint slopes.
  double extrapolate(double x) const;

  double min_x() const { return x_.front(); }
  double max_x() const { return x_.back(); }

 private:
  double eval(double x) const;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

/// Interpolates a sweep at the given pressure. Out-of-range queries throw
/// std::domain_error unless allow_extrapolation is set, in which case the
/// value is continued linearly.
double interpolate(const PressureSweep& sweep, double pressure_kpa,
                   bool allow_extrapolation = false);

/// Headline figure of a sweep: the response at its highest tested
/// pressure, e.g. "170.3° at 25 kPa" or "0.34 N at 25 kPa".
std::string sweep_headline(const PressureSweep& sweep);

struct ComparisonRow {
  std::string label;
  double force_n;
  double pressure_kpa;
};

struct ComparisonReport {
  std::string text;  // column-aligned table
  std::string csv;
};

/// Renders a blocked-force comparison table (rows in input order, both a
/// text and a CSV form). Requires at least one row; forces must be >= 0
/// and pressures > 0.
ComparisonReport comparison_report(std::span<const ComparisonRow> rows);

}  // namespace hyperfit
