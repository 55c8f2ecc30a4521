#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrmap/bigint.hpp"
#include "rrmap/program.hpp"
#include "rrmap/trajectory.hpp"

namespace rrmap {

enum class ParityFilter { None, OddOnly, EvenOnly };

/// An exponential family of start values n0 = mult * base^k + offset for k
/// in [k_lo, k_hi]. Every generated n0 must stay >= 1.
struct FamilySpec {
  std::uint64_t base = 3;
  std::uint64_t k_lo = 1;
  std::uint64_t k_hi = 1;
  BigInt mult = 1;
  std::int64_t offset = 0;
  ParityFilter parity = ParityFilter::None;

  BigInt member(std::uint64_t k) const;
  std::string describe() const;
};

struct FamilyEntry {
  std::uint64_t k = 0;
  BigInt n0;
  std::optional<std::uint64_t> length;  // nullopt = capped
};

/// s(n0) for each family member in k order. Loops are discovered on the
/// fly; capped members are flagged, not dropped.
std::vector<FamilyEntry> family_lengths(const Program& prog, const FamilySpec& spec,
                                        const StopPolicy& caps = {}, unsigned shards = 1);

/// A maximal run of k where one length dominates, with bounded exceptions.
struct IslandReport {
  struct Island {
    std::uint64_t k_start = 0;
    std::uint64_t k_end = 0;
    std::uint64_t common_length = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> exceptions;  // (k, length)
  };
  std::vector<Island> islands;
  std::size_t min_run = 0;
  std::size_t max_exceptions = 0;
};

inline constexpr std::size_t kDefaultIslandMinRun = 5;
inline constexpr std::size_t kDefaultIslandMaxExceptions = 10;

/// Greedy left-to-right detector: an island starts and ends on its common
/// length and may absorb up to max_exceptions deviating entries in between.
/// Input must be sorted by k; capped entries must be removed beforehand.
IslandReport find_islands(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& lengths,
                          std::size_t min_run = kDefaultIslandMinRun,
                          std::size_t max_exceptions = kDefaultIslandMaxExceptions);

struct CommonBranchResult {
  std::optional<BigInt> merge_value;
  std::uint64_t shared_tail_length = 0;  // s(merge_value)
  std::uint64_t length_a = 0;
  std::uint64_t length_b = 0;
  bool lengths_equal = false;
};

/// Confirms two starts share a branch: finds their merge value and checks
/// the residual lengths from it agree with the totals.
CommonBranchResult verify_common_branch(const Program& prog, const BigInt& a,
                                        const BigInt& b, const StopPolicy& caps = {});

}  // namespace rrmap
