#include "rrmap/loop.hpp"

#include <algorithm>
#include <stdexcept>

namespace rrmap {

Loop canonicalize_loop(const Program& prog, const std::vector<BigInt>& raw_cycle) {
  if (raw_cycle.empty()) throw std::invalid_argument("empty cycle");
  auto min_it = std::min_element(raw_cycle.begin(), raw_cycle.end());
  Loop loop;
  loop.members.reserve(raw_cycle.size());
  loop.members.insert(loop.members.end(), min_it, raw_cycle.end());
  loop.members.insert(loop.members.end(), raw_cycle.begin(), min_it);
  loop.min = loop.members.front();
  loop.max = *std::max_element(loop.members.begin(), loop.members.end());
  loop.length = loop.members.size();

  // closure check: step must walk the members in order and come back
  for (std::size_t i = 0; i < loop.members.size(); ++i) {
    BigInt next = step(prog, loop.members[i]);
    const BigInt& expect = loop.members[(i + 1) % loop.members.size()];
    if (next != expect)
      throw std::invalid_argument("values are not a cycle of program '" + prog.id +
                                  "': step(" + to_decimal(loop.members[i]) + ") = " +
                                  to_decimal(next) + ", expected " + to_decimal(expect));
  }
  for (std::size_t i = 1; i < loop.members.size(); ++i)
    if (loop.members[i] == loop.min)
      throw std::invalid_argument("cycle values repeat");
  return loop;
}

}  // namespace rrmap
