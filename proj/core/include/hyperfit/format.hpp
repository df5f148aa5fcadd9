#pragma once

#include <string>

namespace hyperfit {

/// Formats a double with `digits` significant digits, trailing zeros
/// stripped ("%g" style, locale independent). All text artifacts use the
/// default of 6 so that identical inputs yield byte-identical files.
std::string format_sig(double value, int digits = 6);

/// Rounds a value to what format_sig would print (used when structured
/// outputs must agree with their text renderings).
double round_sig(double value, int digits = 6);

}  // namespace hyperfit
