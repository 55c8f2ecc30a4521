#pragma once

#include <cstdint>
#include <vector>

#include "rrmap/bigint.hpp"
#include "rrmap/program.hpp"

namespace rrmap {

/// A cycle of the map, stored minimum-first. length == members.size() is
/// also the number of map applications needed to return to the minimum.
struct Loop {
  std::vector<BigInt> members;
  BigInt min;
  BigInt max;
  std::size_t length = 0;

  friend bool operator==(const Loop& a, const Loop& b) { return a.members == b.members; }
};

/// Rotates a raw cycle minimum-first and verifies closure by stepping
/// around once. Throws std::invalid_argument if the values are not a
/// genuine cycle of the program.
Loop canonicalize_loop(const Program& prog, const std::vector<BigInt>& raw_cycle);

}  // namespace rrmap
