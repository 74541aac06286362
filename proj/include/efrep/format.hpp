#pragma once

#include <charconv>
#include <string>

#include "efrep/numeric.hpp"

namespace efrep {

// Shortest round-trip decimal; empty for undefined values.
inline std::string format_real(double x) {
  if (!is_defined(x)) return {};
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace efrep
