#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace qtool {

// All numeric CSV fields carry 17 significant digits so that parsing the
// text back yields the original double bit-for-bit.
inline std::string csv_real(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

inline std::string csv_int(std::int64_t value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(value));
  return std::string(buf);
}

}  // namespace qtool
