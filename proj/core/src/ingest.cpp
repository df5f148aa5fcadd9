#include "hyperfit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hyperfit/errors.hpp"
#include "hyperfit/format.hpp"

namespace hyperfit {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.emplace_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

double parse_number(std::string_view cell, std::size_t line, const std::string& column) {
  const std::string_view t = trim(cell);
  double value = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
    throw ParseError("cell '" + std::string(t) + "' is not a number", line, column);
  }
  if (!std::isfinite(value)) {
    throw ParseError("cell '" + std::string(t) + "' is not finite", line, column);
  }
  return value;
}

struct CsvRow {
  std::size_t line;  // 1-based physical line
  std::vector<std::string> cells;
};

struct CsvFile {
  std::vector<std::string> header;
  std::size_t header_line = 0;
  std::vector<CsvRow> rows;
  // directive name -> (line, raw value), e.g. "units" -> "load_N=N"
  std::map<std::string, std::pair<std::size_t, std::string>> directives;
};

CsvFile read_csv(std::string_view text) {
  CsvFile file;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const std::size_t colon = body.find(':');
      if (colon != std::string_view::npos) {
        const std::string key{trim(body.substr(0, colon))};
        file.directives[key] = {line_no, std::string(trim(body.substr(colon + 1)))};
      }
      continue;
    }
    if (file.header.empty()) {
      file.header = split_fields(line);
      file.header_line = line_no;
    } else {
      file.rows.push_back({line_no, split_fields(line)});
    }
  }
  if (file.header.empty()) {
    throw ParseError("no header line found", line_no == 0 ? 1 : line_no, "(header)");
  }
  return file;
}

std::size_t column_index(const CsvFile& file, const std::string& name, bool required = true) {
  const auto it = std::find(file.header.begin(), file.header.end(), name);
  if (it == file.header.end()) {
    if (required) throw ParseError("required column is missing", file.header_line, name);
    return static_cast<std::size_t>(-1);
  }
  return static_cast<std::size_t>(it - file.header.begin());
}

void check_row_width(const CsvFile& file, const CsvRow& row) {
  if (row.cells.size() == file.header.size()) return;
  const std::string column = row.cells.size() < file.header.size()
                                 ? file.header[row.cells.size()]
                                 : "(extra field)";
  throw ParseError("expected " + std::to_string(file.header.size()) + " fields, got " +
                       std::to_string(row.cells.size()),
                   row.line, column);
}

// key=value[,key=value...] directive bodies
std::map<std::string, std::string> parse_pairs(const std::string& body, std::size_t line,
                                               const std::string& directive) {
  std::map<std::string, std::string> out;
  for (const std::string& field : split_fields(body)) {
    if (field.empty()) continue;
    const std::size_t eq = field.find('=');
    if (eq == std::string::npos) {
      throw ParseError("malformed " + directive + " entry '" + field + "' (expected key=value)",
                       line, directive);
    }
    out[std::string(trim(std::string_view(field).substr(0, eq)))] =
        std::string(trim(std::string_view(field).substr(eq + 1)));
  }
  return out;
}

// Column names double as unit declarations; an explicit "# units:" line
// must agree with them.
const std::map<std::string, std::vector<std::string>>& expected_units() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"lambda1", {"", "-", "1"}}, {"length_mm", {"mm"}},  {"load_N", {"N"}},
      {"time_h", {"h"}},           {"mass_g", {"g"}},      {"pressure_kPa", {"kPa"}},
      {"angle_deg", {"deg"}},      {"force_N", {"N"}},     {"specimen_id", {"", "-"}},
      {"composition", {"", "-"}},
  };
  return table;
}

void validate_units(const CsvFile& file) {
  const auto it = file.directives.find("units");
  if (it == file.directives.end()) return;
  const auto [line, body] = it->second;
  for (const auto& [column, unit] : parse_pairs(body, line, "units")) {
    if (std::find(file.header.begin(), file.header.end(), column) == file.header.end()) {
      throw ParseError("units declared for a column not present in the header", line, column);
    }
    const auto exp = expected_units().find(column);
    if (exp == expected_units().end()) continue;
    if (std::find(exp->second.begin(), exp->second.end(), unit) == exp->second.end()) {
      throw ParseError("declared unit '" + unit + "' does not match the expected '" +
                           exp->second.back() + "'",
                       line, column);
    }
  }
}

SpecimenGeometry parse_geometry(const CsvFile& file, const SpecimenGeometry& fallback) {
  const auto it = file.directives.find("geometry");
  if (it == file.directives.end()) return fallback;
  const auto [line, body] = it->second;
  const auto pairs = parse_pairs(body, line, "geometry");
  auto pick = [&](const char* key) {
    const auto p = pairs.find(key);
    if (p == pairs.end()) {
      throw ParseError("geometry directive is missing '" + std::string(key) + "'", line,
                       "geometry");
    }
    return parse_number(p->second, line, key);
  };
  try {
    return SpecimenGeometry(pick("l0"), pick("w0"), pick("h0"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line, "geometry");
  }
}

}  // namespace

MassSeries::MassSeries(std::string composition_label, std::vector<MassSample> samples)
    : label_(std::move(composition_label)), samples_(std::move(samples)) {
  if (label_.empty()) throw std::invalid_argument("mass series needs a composition label");
  if (samples_.empty()) throw std::invalid_argument("mass series has no samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].time_h) || samples_[i].time_h < 0.0 ||
        !std::isfinite(samples_[i].mass_g) || !(samples_[i].mass_g > 0.0)) {
      throw std::invalid_argument("mass series needs times >= 0 and masses > 0");
    }
    if (i > 0 && !(samples_[i].time_h > samples_[i - 1].time_h)) {
      throw std::invalid_argument("mass series times must be strictly increasing");
    }
  }
}

RawTable parse_raw_table(std::string_view text) {
  const CsvFile file = read_csv(text);
  validate_units(file);

  RawTable table;
  table.columns = file.header;
  table.units.assign(file.header.size(), "");
  if (const auto it = file.directives.find("units"); it != file.directives.end()) {
    const auto pairs = parse_pairs(it->second.second, it->second.first, "units");
    for (std::size_t c = 0; c < file.header.size(); ++c) {
      if (const auto p = pairs.find(file.header[c]); p != pairs.end()) table.units[c] = p->second;
    }
  }
  for (const CsvRow& row : file.rows) {
    check_row_width(file, row);
    std::vector<double> cells(row.cells.size());
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      cells[c] = parse_number(row.cells[c], row.line, file.header[c]);
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::vector<TensileRecord> parse_tensile_csv(std::string_view text) {
  const CsvFile file = read_csv(text);
  validate_units(file);
  // The paper's standard dogbone; override with "# geometry:".
  const SpecimenGeometry geometry = parse_geometry(file, SpecimenGeometry(35.0, 5.0, 0.5));

  const std::size_t id_col = column_index(file, "specimen_id");
  const std::size_t comp_col = column_index(file, "composition");
  const std::size_t load_col = column_index(file, "load_N");
  const std::size_t lambda_col = column_index(file, "lambda1", /*required=*/false);
  const std::size_t length_col = column_index(file, "length_mm", /*required=*/false);
  if (lambda_col == static_cast<std::size_t>(-1) && length_col == static_cast<std::size_t>(-1)) {
    throw ParseError("need a 'lambda1' or 'length_mm' column", file.header_line, "lambda1");
  }
  if (file.rows.empty()) {
    throw ParseError("file has no data rows", file.header_line, "specimen_id");
  }

  struct Partial {
    std::string composition;
    std::vector<TensileSample> samples;
    std::size_t last_line = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Partial> by_id;

  const std::string stretch_name = lambda_col != static_cast<std::size_t>(-1) ? "lambda1" : "length_mm";
  for (const CsvRow& row : file.rows) {
    check_row_width(file, row);
    const std::string& id = row.cells[id_col];
    if (id.empty()) throw ParseError("empty specimen_id", row.line, "specimen_id");
    const std::string& comp = row.cells[comp_col];
    if (comp.empty()) throw ParseError("empty composition", row.line, "composition");

    double lambda = 0.0;
    if (lambda_col != static_cast<std::size_t>(-1)) {
      lambda = parse_number(row.cells[lambda_col], row.line, "lambda1");
    } else {
      lambda = parse_number(row.cells[length_col], row.line, "length_mm") / geometry.l0();
    }
    const double load = parse_number(row.cells[load_col], row.line, "load_N");

    auto [it, inserted] = by_id.try_emplace(id);
    Partial& part = it->second;
    if (inserted) {
      order.push_back(id);
      part.composition = comp;
    } else if (part.composition != comp) {
      throw ParseError("specimen '" + id + "' changes composition from '" + part.composition +
                           "' to '" + comp + "'",
                       row.line, "composition");
    }
    if (lambda < 1.0) {
      throw ParseError("stretch " + format_sig(lambda) +
                           " is below 1 (tension-only data expected)",
                       row.line, stretch_name);
    }
    if (!part.samples.empty() && !(lambda > part.samples.back().lambda1)) {
      throw ParseError("stretch must be strictly increasing within a specimen", row.line,
                       stretch_name);
    }
    if (load < 0.0) {
      throw ParseError("load must be non-negative", row.line, "load_N");
    }
    part.samples.push_back({lambda, load});
    part.last_line = row.line;
  }

  std::vector<TensileRecord> records;
  records.reserve(order.size());
  for (const std::string& id : order) {
    Partial& part = by_id[id];
    if (part.samples.size() < 5) {
      throw ParseError("specimen '" + id + "' has only " + std::to_string(part.samples.size()) +
                           " samples (need >= 5)",
                       part.last_line, "specimen_id");
    }
    records.emplace_back(id, part.composition, geometry, std::move(part.samples));
  }
  return records;
}

std::string serialize_tensile_csv(std::span<const TensileRecord> records) {
  if (records.empty()) throw std::invalid_argument("nothing to serialize");
  std::ostringstream out;
  const SpecimenGeometry& g = records.front().geometry();
  out << "# units: lambda1=-,load_N=N\n";
  out << "# geometry: l0=" << format_sig(g.l0(), 17) << ",w0=" << format_sig(g.w0(), 17)
      << ",h0=" << format_sig(g.h0(), 17) << "\n";
  out << "specimen_id,composition,lambda1,load_N\n";
  for (const TensileRecord& r : records) {
    for (const TensileSample& s : r.samples()) {
      out << r.specimen_id() << "," << r.composition_label() << ","
          << format_sig(s.lambda1, 17) << "," << format_sig(s.load_n, 17) << "\n";
    }
  }
  return out.str();
}

std::vector<MassSeries> parse_mass_csv(std::string_view text) {
  const CsvFile file = read_csv(text);
  validate_units(file);
  const std::size_t comp_col = column_index(file, "composition");
  const std::size_t time_col = column_index(file, "time_h");
  const std::size_t mass_col = column_index(file, "mass_g");
  if (file.rows.empty()) {
    throw ParseError("file has no data rows", file.header_line, "composition");
  }

  std::vector<std::string> order;
  std::map<std::string, std::vector<MassSample>> by_comp;
  std::map<std::string, std::size_t> last_line;
  for (const CsvRow& row : file.rows) {
    check_row_width(file, row);
    const std::string& comp = row.cells[comp_col];
    if (comp.empty()) throw ParseError("empty composition", row.line, "composition");
    const double t = parse_number(row.cells[time_col], row.line, "time_h");
    const double m = parse_number(row.cells[mass_col], row.line, "mass_g");
    if (t < 0.0) throw ParseError("time must be >= 0", row.line, "time_h");
    if (!(m > 0.0)) throw ParseError("mass must be > 0", row.line, "mass_g");
    auto [it, inserted] = by_comp.try_emplace(comp);
    if (inserted) order.push_back(comp);
    if (!it->second.empty() && !(t > it->second.back().time_h)) {
      throw ParseError("time must be strictly increasing within a composition", row.line,
                       "time_h");
    }
    it->second.push_back({t, m});
    last_line[comp] = row.line;
  }

  std::vector<MassSeries> out;
  out.reserve(order.size());
  for (const std::string& comp : order) out.emplace_back(comp, std::move(by_comp[comp]));
  return out;
}

PressureSweep parse_pressure_csv(std::string_view text) {
  const RawTable table = parse_raw_table(text);
  const auto find = [&](const std::string& name) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    return it == table.columns.end() ? static_cast<std::size_t>(-1)
                                     : static_cast<std::size_t>(it - table.columns.begin());
  };
  const std::size_t p_col = find("pressure_kPa");
  if (p_col == static_cast<std::size_t>(-1)) {
    throw ParseError("required column is missing", 1, "pressure_kPa");
  }
  std::size_t v_col = find("angle_deg");
  SweepQuantity quantity = SweepQuantity::kBendingAngle;
  if (v_col == static_cast<std::size_t>(-1)) {
    v_col = find("force_N");
    quantity = SweepQuantity::kBlockedForce;
  }
  if (v_col == static_cast<std::size_t>(-1)) {
    throw ParseError("need an 'angle_deg' or 'force_N' column", 1, "angle_deg");
  }
  if (table.rows.empty()) throw ParseError("file has no data rows", 1, "pressure_kPa");

  std::vector<SweepSample> samples;
  samples.reserve(table.rows.size());
  for (const auto& row : table.rows) samples.push_back({row[p_col], row[v_col]});
  try {
    return PressureSweep(quantity, std::move(samples));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, "pressure_kPa");
  }
}

std::optional<double> detect_equilibrium(const MassSeries& series, double window_h,
                                         double rel_tol) {
  if (!(window_h > 0.0)) throw std::invalid_argument("window must be positive");
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) {
    throw std::invalid_argument("relative tolerance must lie in (0, 1)");
  }
  const auto& s = series.samples();
  const double span = s.back().time_h - s.front().time_h;
  if (span < window_h) {
    throw std::invalid_argument("series spans less than one window");
  }

  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t0 = s[i].time_h;
    if (t0 + window_h > s.back().time_h) break;  // window no longer fits
    double lo = s[i].mass_g, hi = s[i].mass_g;
    for (std::size_t j = i + 1; j < s.size() && s[j].time_h <= t0 + window_h; ++j) {
      lo = std::min(lo, s[j].mass_g);
      hi = std::max(hi, s[j].mass_g);
    }
    if ((hi - lo) / hi < rel_tol) return t0;
  }
  return std::nullopt;
}

}  // namespace hyperfit
