#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace rrmap {

/// Deterministic parallel reduce over item indices [0, n), split into
/// contiguous chunks. Results merge in chunk order, so the outcome is
/// independent of the shard count whenever each item's result is intrinsic
/// and the merge is associative.
///
/// Worker: Part(std::uint64_t begin, std::uint64_t count)
/// Merger: void(Result& into, Part& part)
template <class Result, class Worker, class Merger>
Result sharded_reduce(std::uint64_t n, unsigned shards, Result init, Worker work,
                      Merger merge) {
  using Part = std::invoke_result_t<Worker&, std::uint64_t, std::uint64_t>;
  if (n == 0) return init;
  if (shards < 1) shards = 1;
  if (static_cast<std::uint64_t>(shards) > n) shards = static_cast<unsigned>(n);

  std::vector<Part> parts(shards);
  {
    std::vector<std::thread> workers;
    workers.reserve(shards);
    const std::uint64_t base = n / shards;
    const std::uint64_t rem = n % shards;
    std::uint64_t begin = 0;
    for (unsigned s = 0; s < shards; ++s) {
      const std::uint64_t len = base + (s < rem ? 1 : 0);
      workers.emplace_back(
          [&parts, &work, s, begin, len] { parts[s] = work(begin, len); });
      begin += len;
    }
    for (auto& w : workers) w.join();
  }

  Result out = std::move(init);
  for (auto& part : parts) merge(out, part);
  return out;
}

inline unsigned default_shards() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace rrmap
