#include "gridmend/format.hpp"

#include <cmath>
#include <cstdio>

namespace gridmend {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // avoid "-0"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_exact(double v) {
  if (v == 0.0) return "0";
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace gridmend
