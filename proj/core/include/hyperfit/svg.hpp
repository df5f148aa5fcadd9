#pragma once

#include <string>
#include <vector>

namespace hyperfit {

/// One plotted series: a polyline, optionally with circle markers at the
/// sample points.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool markers = false;
  bool line = true;
};

/// Minimal deterministic SVG line-chart writer: white background, framed
/// plot area, linear ticks, one polyline per series, legend when labels
/// are present. All numbers are written at 6 significant digits so equal
/// inputs render byte-identical files.
class SvgLinePlot {
 public:
  SvgLinePlot(std::string title, std::string x_label, std::string y_label);

  void add_series(SvgSeries series);
  /// Dashed vertical marker line with a small caption (used for the
  /// detected equilibrium time).
  void add_vertical_marker(double x, std::string caption);

  std::string render(double width = 640.0, double height = 420.0) const;

 private:
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<SvgSeries> series_;
  struct Marker {
    double x;
    std::string caption;
  };
  std::vector<Marker> markers_;
};

}  // namespace hyperfit
