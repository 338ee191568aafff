#pragma once

// Formatting helpers shared by the CLI and the acceptance reports. All
// numbers are written with 17 significant digits ('.'-decimal, no locale),
// so emitted tables round-trip and identical runs are byte-identical.

#include <cstdio>
#include <string>

namespace fvm {

inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace fvm
