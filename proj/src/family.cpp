#include "rrmap/family.hpp"

#include <stdexcept>

#include "rrmap/census.hpp"
#include "rrmap/shard.hpp"

namespace rrmap {

BigInt FamilySpec::member(std::uint64_t k) const {
  BigInt v = mult * pow_u(base, k);
  if (offset >= 0) v += static_cast<unsigned long>(offset);
  else v -= static_cast<unsigned long>(-offset);
  return v;
}

std::string FamilySpec::describe() const {
  std::string s;
  if (mult != 1) s += to_decimal(mult) + "*";
  s += std::to_string(base) + "^k";
  if (offset > 0) s += "+" + std::to_string(offset);
  if (offset < 0) s += std::to_string(offset);
  s += ", k=" + std::to_string(k_lo) + ".." + std::to_string(k_hi);
  return s;
}

std::vector<FamilyEntry> family_lengths(const Program& prog, const FamilySpec& spec,
                                        const StopPolicy& caps, unsigned shards) {
  if (spec.base < 2) throw std::invalid_argument("family base must be >= 2");
  if (spec.k_hi < spec.k_lo) throw std::invalid_argument("empty exponent range");
  if (spec.mult < 1) throw std::invalid_argument("family multiplier must be >= 1");

  std::vector<std::uint64_t> ks;
  for (std::uint64_t k = spec.k_lo; k <= spec.k_hi; ++k) {
    BigInt n0 = spec.member(k);
    if (mpz_sgn(n0.get_mpz_t()) <= 0)
      throw std::invalid_argument("family member at k=" + std::to_string(k) +
                                  " is not positive");
    if (spec.parity == ParityFilter::OddOnly && mpz_even_p(n0.get_mpz_t())) continue;
    if (spec.parity == ParityFilter::EvenOnly && mpz_odd_p(n0.get_mpz_t())) continue;
    ks.push_back(k);
  }

  using Part = std::vector<FamilyEntry>;
  return sharded_reduce(
      ks.size(), shards, Part{},
      [&](std::uint64_t begin, std::uint64_t len) {
        Part part;
        part.reserve(len);
        LoopTracker tracker(prog);
        for (std::uint64_t i = begin; i < begin + len; ++i) {
          FamilyEntry e;
          e.k = ks[i];
          e.n0 = spec.member(ks[i]);
          e.length = tracked_sequence_length(tracker, e.n0, caps);
          part.push_back(std::move(e));
        }
        return part;
      },
      [](Part& into, Part& part) {
        into.insert(into.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
      });
}

IslandReport find_islands(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& lengths,
                          std::size_t min_run, std::size_t max_exceptions) {
  if (min_run < 1) throw std::invalid_argument("min_run must be >= 1");
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (lengths[i].first <= lengths[i - 1].first)
      throw std::invalid_argument("island input must be strictly sorted by k");

  IslandReport report;
  report.min_run = min_run;
  report.max_exceptions = max_exceptions;

  std::size_t i = 0;
  while (i < lengths.size()) {
    const std::uint64_t common = lengths[i].second;
    std::size_t deviations = 0;
    std::size_t best_end = i;  // furthest index holding the common length in budget
    for (std::size_t j = i + 1; j < lengths.size(); ++j) {
      if (lengths[j].second == common) {
        best_end = j;
      } else if (++deviations > max_exceptions) {
        break;
      }
    }
    if (best_end - i + 1 >= min_run) {
      IslandReport::Island island;
      island.k_start = lengths[i].first;
      island.k_end = lengths[best_end].first;
      island.common_length = common;
      for (std::size_t j = i; j <= best_end; ++j)
        if (lengths[j].second != common)
          island.exceptions.emplace_back(lengths[j].first, lengths[j].second);
      report.islands.push_back(std::move(island));
      i = best_end + 1;
    } else {
      ++i;
    }
  }
  return report;
}

CommonBranchResult verify_common_branch(const Program& prog, const BigInt& a,
                                        const BigInt& b, const StopPolicy& caps) {
  CommonBranchResult out;
  LoopTracker tracker(prog);
  auto sa = tracked_sequence_length(tracker, a, caps);
  auto sb = tracked_sequence_length(tracker, b, caps);
  if (!sa || !sb)
    throw NonConvergent("both starts must converge within caps");
  out.length_a = *sa;
  out.length_b = *sb;
  out.lengths_equal = *sa == *sb;
  out.merge_value = merge_point(prog, a, b, caps);
  if (out.merge_value) {
    auto tail = tracked_sequence_length(tracker, *out.merge_value, caps);
    if (tail) out.shared_tail_length = *tail;
  }
  return out;
}

}  // namespace rrmap
