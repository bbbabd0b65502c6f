#pragma once

#include <cstdio>
#include <string>

namespace owcsim {

/// Round-trippable decimal form (17 significant digits).
inline std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace owcsim
