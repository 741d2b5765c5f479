#ifndef SYNATT_NUMFMT_HPP_
#define SYNATT_NUMFMT_HPP_

#include <cstdio>
#include <string>

namespace synatt {

/// 17 significant digits: round-trips every finite double exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace synatt

#endif  // SYNATT_NUMFMT_HPP_
