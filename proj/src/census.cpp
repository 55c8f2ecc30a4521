#include "rrmap/census.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "rrmap/shard.hpp"
#include "rrmap/stepper.hpp"

namespace rrmap {

OddRange OddRange::from_bounds(std::uint64_t lo, std::uint64_t hi) {
  OddRange r;
  r.first = lo | 1;  // round up to odd
  r.count = hi >= r.first ? (hi - r.first) / 2 + 1 : 0;
  return r;
}

OddRange OddRange::first_above(std::uint64_t count, std::uint64_t above) {
  OddRange r;
  r.first = above % 2 == 0 ? above + 1 : above + 2;
  r.count = count;
  return r;
}

std::string OddRange::describe() const {
  return "odd[" + std::to_string(first) + ".." + std::to_string(last()) + "]";
}

LoopTracker::LoopTracker(const Program& prog) : prog_(&prog) { require_valid(prog); }

std::optional<std::size_t> LoopTracker::index_of_min(const BigInt& min) const {
  auto it = by_min_.find(min);
  if (it == by_min_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LoopTracker::member_lookup_small(std::uint64_t v) const {
  if (v > member_small_max_) return std::nullopt;
  auto it = member_small_.find(v);
  if (it == member_small_.end()) return std::nullopt;
  return it->second;
}

std::size_t LoopTracker::seed(const Loop& loop) {
  auto it = by_min_.find(loop.min);
  if (it != by_min_.end()) {
    if (loops_[it->second].length != loop.length)
      throw std::logic_error("two loops with minimum " + to_decimal(loop.min) +
                             " but different lengths");
    return it->second;
  }
  std::size_t idx = loops_.size();
  loops_.push_back(loop);
  by_min_.emplace(loop.min, idx);
  for (const BigInt& m : loop.members) {
    if (fits_u64(m)) {
      std::uint64_t v = to_u64(m);
      member_small_.emplace(v, static_cast<std::uint32_t>(idx));
      member_small_max_ = std::max(member_small_max_, v);
    } else {
      member_big_.emplace_back(m, static_cast<std::uint32_t>(idx));
    }
  }
  std::sort(member_big_.begin(), member_big_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return idx;
}

void LoopTracker::absorb(const LoopTracker& other) {
  for (const Loop& loop : other.loops_) seed(loop);
}

LoopTracker::Classification LoopTracker::attempt(const BigInt& n0, const StopPolicy& caps,
                                                 bool measure_to_min, bool& discovered) {
  discovered = false;
  Classification out;

  Stepper st(*prog_);
  st.reset(n0);

  auto current_member = [&]() -> std::optional<std::size_t> {
    if (st.small()) return member_lookup_small(st.small_value());
    if (member_big_.empty()) return std::nullopt;
    auto it = std::lower_bound(member_big_.begin(), member_big_.end(), st.big_value(),
                               [](const auto& a, const BigInt& v) { return a.first < v; });
    if (it != member_big_.end() && it->first == st.big_value()) return it->second;
    return std::nullopt;
  };
  auto walk_to_min = [&](std::size_t loop_idx, std::uint64_t steps) {
    const Loop& loop = loops_[loop_idx];
    out.steps_to_min = steps;
    if (!measure_to_min) return;
    while (!(st.small() ? (fits_u64(loop.min) && st.small_value() == to_u64(loop.min))
                        : (!fits_u64(loop.min) && st.big_value() == loop.min))) {
      st.step();
      ++out.steps_to_min;
    }
  };

  if (auto hit = current_member()) {
    out.loop = *hit;
    walk_to_min(*hit, 0);
    return out;
  }

  // same integrated Brent search as trajectory::drive
  bool prev_small = st.small();
  std::uint64_t prev_sval = st.small() ? st.small_value() : 0;
  std::uint32_t prev_bits = st.bits();

  Stepper::Snapshot tortoise = st.snapshot();
  std::uint64_t power = 1;
  std::uint64_t gap = 0;
  std::uint64_t steps = 0;

  while (true) {
    if (steps >= caps.max_iterations) return out;  // capped
    st.step();
    ++steps;
    ++gap;

    if (!out.saw_up_step) {
      if (st.small()) {
        if (prev_small && st.small_value() > prev_sval) out.saw_up_step = true;
      } else {
        // bit-length compare only: a rise inside one bit length is missed
        // until the next bit is gained
        std::uint32_t b = st.bits();
        if (prev_small || b > prev_bits) out.saw_up_step = true;
      }
    }
    prev_small = st.small();
    if (prev_small) prev_sval = st.small_value();
    prev_bits = st.bits();

    if (!st.small() && st.bits() > caps.max_bits) return out;  // capped

    if (auto hit = current_member()) {
      out.loop = *hit;
      out.steps_to_member = steps;
      walk_to_min(*hit, steps);
      return out;
    }
    if (st.equals(tortoise)) {
      std::vector<BigInt> members;
      members.reserve(gap);
      Stepper walker(*prog_);
      walker.reset(st.value());
      members.push_back(walker.value());
      for (std::uint64_t i = 1; i < gap; ++i) {
        walker.step();
        members.push_back(walker.value());
      }
      seed(canonicalize_loop(*prog_, members));
      discovered = true;
      return out;  // caller retries with the loop registered
    }
    if (gap == power) {
      tortoise = st.snapshot();
      power <<= 1;
      gap = 0;
    }
  }
}

LoopTracker::Classification LoopTracker::classify(const BigInt& n0, const StopPolicy& caps,
                                                  bool measure_to_min) {
  while (true) {
    bool discovered = false;
    Classification c = attempt(n0, caps, measure_to_min, discovered);
    if (!discovered) return c;
  }
}

std::optional<std::uint64_t> tracked_sequence_length(LoopTracker& tracker, const BigInt& n0,
                                                     const StopPolicy& caps) {
  auto c = tracker.classify(n0, caps, /*measure_to_min=*/true);
  if (!c.loop) return std::nullopt;
  return c.steps_to_min;
}

namespace {

struct ShardScan {
  std::unique_ptr<LoopTracker> tracker;
  // counts keyed by shard-local loop index
  std::vector<std::uint64_t> counts;
  std::uint64_t capped = 0;
  std::vector<BigInt> capped_starts;

  // interestingness extras
  std::uint64_t with_up_step = 0;
  struct DecadeAcc {
    std::uint64_t n = 0;
    double sum = 0, sumsq = 0;
  };
  std::map<int, DecadeAcc> decades;
};

ShardScan scan_chunk(const Program& prog, const OddRange& range, std::uint64_t begin,
                     std::uint64_t len, const StopPolicy& caps, bool lengths_wanted) {
  ShardScan out;
  out.tracker = std::make_unique<LoopTracker>(prog);
  for (std::uint64_t i = begin; i < begin + len; ++i) {
    BigInt n0 = from_u64(range.at(i));
    auto c = out.tracker->classify(n0, caps, lengths_wanted);
    if (c.saw_up_step) ++out.with_up_step;
    if (!c.loop) {
      ++out.capped;
      if (out.capped_starts.size() <= 100) out.capped_starts.push_back(n0);
      continue;
    }
    if (out.counts.size() < out.tracker->loops().size())
      out.counts.resize(out.tracker->loops().size(), 0);
    ++out.counts[*c.loop];
    if (lengths_wanted) {
      int decade = static_cast<int>(decimal_digits(n0)) - 1;
      auto& acc = out.decades[decade];
      ++acc.n;
      double L = static_cast<double>(c.steps_to_min);
      acc.sum += L;
      acc.sumsq += L * L;
    }
  }
  return out;
}

struct MergedScan {
  std::map<BigInt, Loop> loops;
  std::map<BigInt, std::uint64_t> counts;
  std::uint64_t capped = 0;
  std::vector<BigInt> capped_starts;
  std::uint64_t with_up_step = 0;
  std::map<int, ShardScan::DecadeAcc> decades;
};

void merge_scan(MergedScan& into, ShardScan& part) {
  if (!part.tracker) return;
  const auto& loops = part.tracker->loops();
  for (std::size_t i = 0; i < loops.size(); ++i) {
    into.loops.emplace(loops[i].min, loops[i]);
    std::uint64_t c = i < part.counts.size() ? part.counts[i] : 0;
    if (c) into.counts[loops[i].min] += c;
  }
  into.capped += part.capped;
  for (auto& s : part.capped_starts)
    if (into.capped_starts.size() <= 100) into.capped_starts.push_back(s);
  into.with_up_step += part.with_up_step;
  for (auto& [decade, acc] : part.decades) {
    auto& d = into.decades[decade];
    d.n += acc.n;
    d.sum += acc.sum;
    d.sumsq += acc.sumsq;
  }
}

MergedScan scan_range(const Program& prog, const OddRange& range, const StopPolicy& caps,
                      unsigned shards, bool lengths_wanted) {
  return sharded_reduce(
      range.count, shards, MergedScan{},
      [&](std::uint64_t begin, std::uint64_t len) {
        return scan_chunk(prog, range, begin, len, caps, lengths_wanted);
      },
      merge_scan);
}

}  // namespace

LoopRegistry find_loops(const Program& prog, std::uint64_t scan_bound,
                        const StopPolicy& caps, unsigned shards) {
  if (scan_bound < 1) throw std::invalid_argument("scan bound must be >= 1");
  MergedScan scan =
      scan_range(prog, OddRange::from_bounds(1, scan_bound), caps, shards, false);

  LoopRegistry reg;
  reg.program_id = prog.id;
  reg.scan_bound = scan_bound;
  reg.capped_count = scan.capped;
  if (scan.capped <= 100) reg.capped_starts = std::move(scan.capped_starts);
  for (auto& [min, loop] : scan.loops) reg.loops.emplace(min, LoopRegistry::Entry{loop, {}});

  // root pass: walk every start (both parities) upward until each loop has
  // its lowest entry point
  LoopTracker tracker(prog);
  for (auto& [min, entry] : reg.loops) tracker.seed(entry.loop);
  std::size_t missing = reg.loops.size();
  for (std::uint64_t n = 1; n <= scan_bound && missing > 0; ++n) {
    auto c = tracker.classify(from_u64(n), caps);
    if (!c.loop) continue;
    const BigInt& min = tracker.loops()[*c.loop].min;
    auto it = reg.loops.find(min);
    if (it != reg.loops.end() && !it->second.lowest_root_node) {
      it->second.lowest_root_node = from_u64(n);
      --missing;
    }
  }
  return reg;
}

std::optional<BigInt> lowest_root_node(const Program& prog, const LoopRegistry& registry,
                                       const BigInt& loop_min, std::uint64_t search_bound,
                                       const StopPolicy& caps) {
  if (!registry.loops.count(loop_min))
    throw std::invalid_argument("loop " + to_decimal(loop_min) + " is not in the registry");
  LoopTracker tracker(prog);
  for (auto& [min, entry] : registry.loops) tracker.seed(entry.loop);
  std::size_t target = *tracker.index_of_min(loop_min);
  for (std::uint64_t n = 1; n <= search_bound; ++n) {
    auto c = tracker.classify(from_u64(n), caps);
    if (c.loop && *c.loop == target) return from_u64(n);
  }
  return std::nullopt;
}

BasinReport basin_scan(const Program& prog, const OddRange& range, const StopPolicy& caps,
                       unsigned shards) {
  if (range.count < 1) throw std::invalid_argument("empty start range");
  MergedScan scan = scan_range(prog, range, caps, shards, false);

  BasinReport report;
  report.program_id = prog.id;
  report.range = range.describe();
  report.scanned = range.count;
  report.capped_count = scan.capped;
  if (scan.capped <= 100) report.capped_starts = std::move(scan.capped_starts);
  report.resolved = range.count - scan.capped;
  for (auto& [min, count] : scan.counts) {
    BasinReport::Row row;
    row.loop_min = min;
    row.count = count;
    row.percent = report.resolved == 0
                      ? 0.0
                      : 100.0 * static_cast<double>(count) /
                            static_cast<double>(report.resolved);
    report.rows.push_back(std::move(row));
  }
  return report;
}

InterestingnessReport interestingness_report(const Program& prog, const OddRange& sample,
                                             const StopPolicy& caps, unsigned shards) {
  if (sample.count < 1) throw std::invalid_argument("empty sample");
  MergedScan scan = scan_range(prog, sample, caps, shards, true);

  InterestingnessReport rep;
  rep.program_id = prog.id;
  rep.sample = sample.describe();
  rep.sampled = sample.count;
  rep.capped_fraction =
      static_cast<double>(scan.capped) / static_cast<double>(sample.count);
  rep.non_monotone_fraction =
      static_cast<double>(scan.with_up_step) / static_cast<double>(sample.count);
  for (auto& [decade, acc] : scan.decades) {
    InterestingnessReport::DecadeDispersion d;
    d.decade = decade;
    d.n = acc.n;
    if (acc.n > 0) {
      d.mean_length = acc.sum / static_cast<double>(acc.n);
      double var = acc.sumsq / static_cast<double>(acc.n) - d.mean_length * d.mean_length;
      d.stddev_length = var > 0 ? std::sqrt(var) : 0.0;
    }
    rep.dispersion.push_back(d);
  }
  rep.loop_count = scan.loops.size();
  return rep;
}

}  // namespace rrmap
