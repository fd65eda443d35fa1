#pragma once

#include <sstream>
#include <string>

namespace psring::detail {

// Shortest-ish decimal for error messages (std::to_string prints 1e-9 as 0.000000).
inline std::string format_number(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

}  // namespace psring::detail
