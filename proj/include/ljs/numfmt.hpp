#pragma once

#include <string>

namespace ljs {

// The string JavaScript engines print for a number: shortest round-trip
// digits, laid out with the engine exponent thresholds (fixed notation for
// 1e-6 <= |x| < 1e21, scientific outside). -0 prints "0".
std::string js_number_to_string(double v);

// JavaScript ToNumber on a string: trimmed; "" -> 0; decimal, hex (0x...),
// and "Infinity" accepted; anything else -> NaN.
double js_string_to_number(const std::string& s);

}  // namespace ljs
