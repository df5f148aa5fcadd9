#include "hyperfit/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace hyperfit {

std::string format_sig(double value, int digits) {
  if (digits < 1 || digits > 17) throw std::invalid_argument("format_sig: digits out of range");
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // normalize -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

double round_sig(double value, int digits) {
  if (!std::isfinite(value)) return value;
  const std::string s = format_sig(value, digits);
  double out = value;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

}  // namespace hyperfit
