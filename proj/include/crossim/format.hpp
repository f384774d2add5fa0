#pragma once

#include <charconv>
#include <string>

namespace crossim {

/// Shortest decimal form that round-trips the exact double. All numeric
/// output goes through here so artifacts are byte-stable across runs.
inline std::string fmt_double(double v) {
  if (v == 0.0) return "0";  // merge the two zero signs
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace crossim
