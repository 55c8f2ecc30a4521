#include "rrmap/trajectory.hpp"

#include <algorithm>
#include <set>

#include "rrmap/stepper.hpp"

namespace rrmap {
namespace {

struct MinimaIndex {
  std::vector<std::uint64_t> small;  // sorted
  std::vector<BigInt> big;           // sorted

  explicit MinimaIndex(const std::vector<BigInt>& minima) {
    for (const BigInt& m : minima) {
      if (fits_u64(m)) small.push_back(to_u64(m));
      else big.push_back(m);
    }
    std::sort(small.begin(), small.end());
    small.erase(std::unique(small.begin(), small.end()), small.end());
    std::sort(big.begin(), big.end());
  }

  bool contains(const Stepper& st) const {
    if (st.small())
      return !small.empty() &&
             std::binary_search(small.begin(), small.end(), st.small_value());
    return !big.empty() && std::binary_search(big.begin(), big.end(), st.big_value());
  }
};

// Exact running maximum without big-number traffic while values are small.
struct PeakTracker {
  bool small = true;
  std::uint64_t sval = 0;
  BigInt bval;
  std::uint32_t bbits = 0;

  void seed(const Stepper& st) {
    small = st.small();
    if (small) {
      sval = st.small_value();
    } else {
      bval = st.big_value();
      bbits = st.bits();
    }
  }
  void offer(const Stepper& st) {
    if (st.small()) {
      if (small && st.small_value() > sval) sval = st.small_value();
      // a big max always beats any small value
      return;
    }
    std::uint32_t vb = st.bits();
    if (small || vb > bbits ||
        (vb == bbits && mpz_cmp(st.big_value().get_mpz_t(), bval.get_mpz_t()) > 0)) {
      bval = st.big_value();
      bbits = vb;
      small = false;
    }
  }
  BigInt value() const { return small ? from_u64(sval) : bval; }
};

Loop extract_cycle(const Program& prog, const Stepper& at_cycle, std::uint64_t period) {
  std::vector<BigInt> members;
  members.reserve(period);
  Stepper walker(prog);
  walker.reset(at_cycle.value());
  members.push_back(walker.value());
  for (std::uint64_t i = 1; i < period; ++i) {
    walker.step();
    members.push_back(walker.value());
  }
  return canonicalize_loop(prog, members);
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Converged: return "converged";
    case Outcome::CycleFound: return "cycle_found";
    case Outcome::IterationCapped: return "iteration_capped";
    case Outcome::BitCapped: return "bit_capped";
  }
  return "?";
}

Trajectory drive(const Program& prog, const BigInt& n0, const StopPolicy& policy,
                 const DriveState* resume_from, std::uint64_t callback_every,
                 const DriveCallback& cb) {
  if (mpz_sgn(n0.get_mpz_t()) <= 0) throw std::invalid_argument("n0 must be >= 1");
  if (policy.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (policy.max_bits < 64) throw std::invalid_argument("max_bits must be >= 64");

  Stepper st(prog);
  MinimaIndex minima(policy.known_loop_minima);

  Trajectory traj;
  traj.n0 = n0;
  traj.rule_fire_counts.assign(prog.rules.size(), 0);

  std::uint64_t steps = 0;
  bool run_up_over = false;
  PeakTracker peak;

  if (resume_from != nullptr) {
    if (resume_from->rule_fire_counts.size() != prog.rules.size())
      throw std::invalid_argument("resume state does not match the program's rule count");
    st.reset(resume_from->value);
    steps = resume_from->steps_done;
    traj.rule_fire_counts = resume_from->rule_fire_counts;
    traj.max_bits = resume_from->max_bits_seen;
    run_up_over = true;  // the initial run of up-steps is not resumable
  } else {
    st.reset(n0);
  }
  peak.seed(st);

  if (policy.record_full_path) traj.path.emplace().push_back(st.value());

  auto finish = [&](Outcome outcome) {
    traj.outcome = outcome;
    traj.length = steps;
    traj.max_value = peak.value();
    traj.max_bits = std::max(traj.max_bits, bit_length(traj.max_value));
    return traj;
  };
  auto emit_state = [&]() {
    if (!cb) return;
    DriveState state;
    state.value = st.value();
    state.steps_done = steps;
    state.rule_fire_counts = traj.rule_fire_counts;
    state.max_bits_seen = std::max(traj.max_bits, bit_length(peak.value()));
    cb(state);
  };

  if (minima.contains(st)) {
    traj.converged_min = st.value();
    return finish(Outcome::Converged);
  }

  // Brent cycle search rides along: tortoise teleports to the current
  // position whenever the gap reaches a power of two.
  Stepper::Snapshot tortoise = st.snapshot();
  std::uint64_t power = 1;
  std::uint64_t gap = 0;

  while (true) {
    if (steps >= policy.max_iterations) {
      emit_state();
      return finish(Outcome::IterationCapped);
    }
    std::size_t fired = st.step();
    ++steps;
    ++gap;
    ++traj.rule_fire_counts[fired];
    if (!run_up_over) {
      if (fired == 0) run_up_over = true;
      else ++traj.leading_up_steps;
    }
    peak.offer(st);
    if (policy.record_full_path) traj.path->push_back(st.value());
    if (callback_every > 0 && steps % callback_every == 0) emit_state();

    if (!st.small() && st.bits() > policy.max_bits) {
      emit_state();
      return finish(Outcome::BitCapped);
    }
    if (minima.contains(st)) {
      traj.converged_min = st.value();
      emit_state();
      return finish(Outcome::Converged);
    }
    if (st.equals(tortoise)) {
      traj.cycle = extract_cycle(prog, st, gap);
      emit_state();
      return finish(Outcome::CycleFound);
    }
    if (gap == power) {
      tortoise = st.snapshot();
      power <<= 1;
      gap = 0;
    }
  }
}

Trajectory iterate(const Program& prog, const BigInt& n0, const StopPolicy& policy) {
  return drive(prog, n0, policy);
}

std::uint64_t sequence_length(const Program& prog, const BigInt& n0,
                              const std::vector<BigInt>& known_loop_minima,
                              const StopPolicy& caps) {
  StopPolicy policy = caps;
  policy.known_loop_minima = known_loop_minima;
  policy.record_full_path = false;
  Trajectory t = drive(prog, n0, policy);
  if (t.outcome == Outcome::CycleFound) {
    // entered a loop we were not told about: measure to its minimum
    policy.known_loop_minima.push_back(t.cycle->min);
    t = drive(prog, n0, policy);
  }
  if (t.outcome != Outcome::Converged)
    throw NonConvergent("no convergence from " + to_decimal(n0) + " within caps (" +
                        outcome_name(t.outcome) + ")");
  return t.length;
}

CycleSearchResult detect_cycle(const Program& prog, const BigInt& n0,
                               const StopPolicy& caps) {
  StopPolicy policy = caps;
  policy.known_loop_minima.clear();
  policy.record_full_path = false;
  Trajectory t = drive(prog, n0, policy);
  CycleSearchResult out;
  if (t.outcome == Outcome::CycleFound) out.loop = std::move(t.cycle);
  else out.capped = true;
  return out;
}

std::optional<BigInt> merge_point(const Program& prog, const BigInt& a, const BigInt& b,
                                  const StopPolicy& caps) {
  if (mpz_sgn(a.get_mpz_t()) <= 0 || mpz_sgn(b.get_mpz_t()) <= 0)
    throw std::invalid_argument("starts must be >= 1");
  // index the orbit of the smaller start, then scan the other in order
  const BigInt& indexed = a <= b ? a : b;
  const BigInt& scanned = a <= b ? b : a;

  std::set<BigInt> seen;
  Stepper st(prog);
  st.reset(indexed);
  for (std::uint64_t i = 0; i <= caps.max_iterations; ++i) {
    if (!seen.insert(st.value()).second) break;  // orbit closed
    if (st.bits() > caps.max_bits) return std::nullopt;
    if (i == caps.max_iterations) return std::nullopt;
    st.step();
  }

  std::set<BigInt> scanned_seen;
  st.reset(scanned);
  for (std::uint64_t i = 0; i <= caps.max_iterations; ++i) {
    BigInt v = st.value();
    if (seen.count(v)) return v;
    if (!scanned_seen.insert(std::move(v)).second) return std::nullopt;  // disjoint loops
    if (st.bits() > caps.max_bits) return std::nullopt;
    if (i == caps.max_iterations) return std::nullopt;
    st.step();
  }
  return std::nullopt;
}

std::uint64_t leading_up_steps(const Program& prog, const BigInt& n0) {
  Stepper st(prog);
  st.reset(n0);
  std::uint64_t count = 0;
  while (true) {
    if (st.step() == 0) return count;
    ++count;
    if (count > kDefaultMaxIterations)
      throw NonConvergent("initial up-run from " + to_decimal(n0) +
                          " exceeded the iteration cap");
  }
}

}  // namespace rrmap
