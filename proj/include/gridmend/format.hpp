#pragma once

#include <string>

namespace gridmend {

// Numeric text for CLI/CSV output: 9 significant digits, no trailing noise.
std::string format_number(double v);

// Numeric text for model export: exact round-trip (%.17g), integers printed bare.
std::string format_exact(double v);

}  // namespace gridmend
