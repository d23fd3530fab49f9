#pragma once

#include <array>
#include <charconv>
#include <string>

namespace frog {

// Shortest round-trip decimal form; the single formatting used by every CSV
// writer so outputs are reproducible byte-for-byte.
inline std::string fmt_double(double v) {
  std::array<char, 64> buf;
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), p);
}

}  // namespace frog
