#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rrmap/bigint.hpp"
#include "rrmap/loop.hpp"
#include "rrmap/program.hpp"

namespace rrmap {

inline constexpr std::uint64_t kDefaultMaxIterations = 10'000'000;
inline constexpr std::uint32_t kDefaultMaxBits = 40'000;

/// When to stop iterating. Hitting a known loop minimum is convergence;
/// hitting a cap is an outcome, not an error.
struct StopPolicy {
  std::vector<BigInt> known_loop_minima;
  std::uint64_t max_iterations = kDefaultMaxIterations;
  std::uint32_t max_bits = kDefaultMaxBits;
  bool record_full_path = false;
};

enum class Outcome { Converged, CycleFound, IterationCapped, BitCapped };

const char* outcome_name(Outcome o);

/// Everything measured while iterating one start value. length counts map
/// applications; max_value includes the start itself; rule_fire_counts sum
/// to length; leading_up_steps is the initial run of non-even-rule steps.
struct Trajectory {
  BigInt n0;
  Outcome outcome = Outcome::IterationCapped;
  BigInt converged_min;        // meaningful when outcome == Converged
  std::optional<Loop> cycle;   // present when outcome == CycleFound
  std::uint64_t length = 0;
  BigInt max_value;
  std::uint32_t max_bits = 0;
  std::vector<std::uint64_t> rule_fire_counts;
  std::uint64_t leading_up_steps = 0;
  std::optional<std::vector<BigInt>> path;
};

struct NonConvergent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mid-run iteration state, used to resume long hunts from a checkpoint and
/// to report progress. steps_done counts applications since the original n0.
struct DriveState {
  BigInt value;
  std::uint64_t steps_done = 0;
  std::vector<std::uint64_t> rule_fire_counts;
  std::uint32_t max_bits_seen = 0;
};

using DriveCallback = std::function<void(const DriveState&)>;

/// Core iteration driver. resume_from restarts a trajectory mid-flight
/// (cycle detection restarts at the resume point; the value sequence is
/// unaffected). callback_every > 0 invokes the callback whenever
/// steps_done is a multiple of it.
Trajectory drive(const Program& prog, const BigInt& n0, const StopPolicy& policy,
                 const DriveState* resume_from = nullptr,
                 std::uint64_t callback_every = 0, const DriveCallback& cb = {});

/// Iterates until a known minimum, a detected cycle, or a cap. Deterministic.
Trajectory iterate(const Program& prog, const BigInt& n0, const StopPolicy& policy);

/// Map applications from n0 until the value first equals the minimum of the
/// loop it enters. Unknown loops are discovered and measured exactly; caps
/// raise NonConvergent.
std::uint64_t sequence_length(const Program& prog, const BigInt& n0,
                              const std::vector<BigInt>& known_loop_minima,
                              const StopPolicy& caps = {});

struct CycleSearchResult {
  std::optional<Loop> loop;
  bool capped = false;
};

/// Brent cycle search from n0: constant memory, exact period extraction.
CycleSearchResult detect_cycle(const Program& prog, const BigInt& n0,
                               const StopPolicy& caps = {});

/// First value appearing in both orbits (walking b's orbit in order,
/// against the indexed orbit of a); nullopt if the orbits stay disjoint or
/// a cap hits first.
std::optional<BigInt> merge_point(const Program& prog, const BigInt& a, const BigInt& b,
                                  const StopPolicy& caps = {});

/// Length of the maximal initial run of non-even-rule applications.
std::uint64_t leading_up_steps(const Program& prog, const BigInt& n0);

}  // namespace rrmap
