#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperfit/actuator.hpp"
#include "hyperfit/fit.hpp"

namespace hyperfit {

struct MassSample {
  double time_h;
  double mass_g;
};

/// Drying-mass time series of one composition. Time starts at zero and
/// increases strictly; masses are positive.
class MassSeries {
 public:
  MassSeries(std::string composition_label, std::vector<MassSample> samples);

  const std::string& composition_label() const { return label_; }
  const std::vector<MassSample>& samples() const { return samples_; }

 private:
  std::string label_;
  std::vector<MassSample> samples_;
};

/// Fully numeric table: column names, per-column declared units ("" when
/// the file declares none), and rectangular rows of finite numbers.
struct RawTable {
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<double>> rows;
};

/// Parses a numeric CSV (optionally carrying "# units:" declarations)
/// into a RawTable. Every cell must parse as a finite number; violations
/// raise ParseError with the row and column.
RawTable parse_raw_table(std::string_view text);

/// Parses tensile-test CSV data into one record per specimen.
///
/// Schema: columns `specimen_id, composition, lambda1|length_mm, load_N`,
/// optional directives `# geometry: l0=35,w0=5,h0=0.5` (mm) and
/// `# units: load_N=N,...`. When the file carries length_mm the stretch
/// is computed as length/l0. Without a geometry directive the standard
/// dogbone (35 x 5 x 0.5 mm) is assumed.
std::vector<TensileRecord> parse_tensile_csv(std::string_view text);

/// Inverse of parse_tensile_csv, written at full precision so a parse ->
/// serialize -> parse round trip reproduces the records exactly.
std::string serialize_tensile_csv(std::span<const TensileRecord> records);

/// Parses a drying-mass CSV (`composition, time_h, mass_g`) into one
/// series per composition, in file order.
std::vector<MassSeries> parse_mass_csv(std::string_view text);

/// Parses a pressure-sweep CSV (`pressure_kPa, angle_deg` or
/// `pressure_kPa, force_N`).
PressureSweep parse_pressure_csv(std::string_view text);

/// Earliest sample time t such that the relative mass spread
/// (max - min) / max over the window [t, t + window_h] stays below
/// rel_tol. Returns nullopt when the series never settles (the window
/// must fit inside the sampled span). Defaults reproduce the qualitative
/// 48 h drying plateau on slow-decay series.
std::optional<double> detect_equilibrium(const MassSeries& series, double window_h = 12.0,
                                         double rel_tol = 0.01);

}  // namespace hyperfit
