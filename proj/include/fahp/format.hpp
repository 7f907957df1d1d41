#pragma once

#include <string>

namespace fahp {

// Compact rendering for diagnostics ("0.142857", "7").
std::string format_number(double value);

// Fixed four-decimal rendering used by every report; never prints "-0.0000".
std::string fixed4(double value);

// Value rounded half-away-from-zero to four decimals.
double round4(double value);

}  // namespace fahp
