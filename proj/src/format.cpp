#include "fahp/format.hpp"

#include <cmath>
#include <cstdio>

namespace fahp {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string fixed4(double value) {
  double r = round4(value);
  if (r == 0.0) r = 0.0;  // drops the sign of -0
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", r);
  return buf;
}

double round4(double value) { return std::round(value * 1e4) / 1e4; }

}  // namespace fahp
