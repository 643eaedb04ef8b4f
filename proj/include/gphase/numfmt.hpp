#pragma once

#include <charconv>
#include <string>

namespace gphase {

/// Shortest decimal form of a double that parses back to the same value
/// (at most 17 significant digits). The output depends only on the value,
/// so every emitted file is byte-stable across runs and platforms.
inline std::string format_double(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace gphase
