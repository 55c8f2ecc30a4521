#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rrmap/loop.hpp"
#include "rrmap/program.hpp"
#include "rrmap/trajectory.hpp"

namespace rrmap {

/// The arithmetic start sets used by scans: first, first+2, ... (count values).
struct OddRange {
  std::uint64_t first = 1;
  std::uint64_t count = 0;

  /// Odd integers in [lo, hi].
  static OddRange from_bounds(std::uint64_t lo, std::uint64_t hi);
  /// The first `count` odd integers strictly above `above`.
  static OddRange first_above(std::uint64_t count, std::uint64_t above);

  std::uint64_t at(std::uint64_t index) const { return first + 2 * index; }
  std::uint64_t last() const { return count == 0 ? 0 : first + 2 * (count - 1); }
  std::string describe() const;
};

/// Grow-as-you-go set of the loops seen so far, with member lookup tuned
/// for trajectory classification: a start's loop is decided by the first
/// loop member its orbit hits (loops are forward-invariant, so that member
/// can only belong to the loop the orbit is in).
class LoopTracker {
 public:
  explicit LoopTracker(const Program& prog);

  struct Classification {
    std::optional<std::size_t> loop;     // index into loops(); nullopt = capped
    std::uint64_t steps_to_member = 0;   // applications until the first member hit
    std::uint64_t steps_to_min = 0;      // filled when measure_to_min
    bool saw_up_step = false;            // any application that increased the value
  };

  Classification classify(const BigInt& n0, const StopPolicy& caps,
                          bool measure_to_min = false);

  /// Registers a known loop (no-op if its minimum is already present).
  std::size_t seed(const Loop& loop);
  void absorb(const LoopTracker& other);

  const std::vector<Loop>& loops() const { return loops_; }
  std::optional<std::size_t> index_of_min(const BigInt& min) const;
  const Program& program() const { return *prog_; }

 private:
  std::optional<std::size_t> member_lookup_small(std::uint64_t v) const;
  Classification attempt(const BigInt& n0, const StopPolicy& caps, bool measure_to_min,
                         bool& discovered);

  const Program* prog_;
  std::vector<Loop> loops_;
  std::map<BigInt, std::size_t> by_min_;
  std::unordered_map<std::uint64_t, std::uint32_t> member_small_;
  std::uint64_t member_small_max_ = 0;
  std::vector<std::pair<BigInt, std::uint32_t>> member_big_;  // sorted by value
};

/// Sequence length s(n0) measured with a shared tracker: loops are
/// discovered on the fly, no minima list needed. nullopt when capped.
std::optional<std::uint64_t> tracked_sequence_length(LoopTracker& tracker,
                                                     const BigInt& n0,
                                                     const StopPolicy& caps);

struct LoopRegistry {
  std::string program_id;
  struct Entry {
    Loop loop;
    std::optional<BigInt> lowest_root_node;
  };
  std::map<BigInt, Entry> loops;  // keyed by loop minimum
  std::uint64_t scan_bound = 0;
  std::uint64_t capped_count = 0;
  std::vector<BigInt> capped_starts;  // retained while <= 100
};

struct BasinReport {
  std::string program_id;
  std::string range;
  std::uint64_t scanned = 0;
  std::uint64_t resolved = 0;
  struct Row {
    BigInt loop_min;
    std::uint64_t count = 0;
    double percent = 0.0;  // of resolved starts
  };
  std::vector<Row> rows;  // ascending loop_min
  std::uint64_t capped_count = 0;
  std::vector<BigInt> capped_starts;
};

/// Classifies every odd n0 <= scan_bound, deduplicates the loops found, and
/// fills in each loop's lowest root node (smallest n0 of either parity whose
/// trajectory enters it, searched up to scan_bound).
LoopRegistry find_loops(const Program& prog, std::uint64_t scan_bound,
                        const StopPolicy& caps = {}, unsigned shards = 1);

/// Smallest n0 >= 1 whose trajectory enters the loop with the given
/// minimum; loop members are candidates. nullopt if none below the bound.
std::optional<BigInt> lowest_root_node(const Program& prog, const LoopRegistry& registry,
                                       const BigInt& loop_min, std::uint64_t search_bound,
                                       const StopPolicy& caps = {});

/// Exit-basin census over a start range. Deterministic and independent of
/// the shard count: counts merge by loop identity, which is intrinsic.
BasinReport basin_scan(const Program& prog, const OddRange& range,
                       const StopPolicy& caps = {}, unsigned shards = 1);

/// The four measurements behind "is this map interesting":
/// divergence suspicion, non-monotonicity, length dispersion, loop count.
struct InterestingnessReport {
  std::string program_id;
  std::string sample;
  std::uint64_t sampled = 0;
  double capped_fraction = 0.0;
  double non_monotone_fraction = 0.0;
  struct DecadeDispersion {
    int decade = 0;  // n0 in [10^decade, 10^(decade+1))
    std::uint64_t n = 0;
    double mean_length = 0.0;
    double stddev_length = 0.0;
  };
  std::vector<DecadeDispersion> dispersion;
  std::size_t loop_count = 0;
};

InterestingnessReport interestingness_report(const Program& prog, const OddRange& sample,
                                             const StopPolicy& caps = {},
                                             unsigned shards = 1);

}  // namespace rrmap
