#pragma once

#include <cstdint>
#include <vector>

#include "rrmap/bigint.hpp"
#include "rrmap/program.hpp"

namespace rrmap {

/// Applies one map step at a time, keeping the current value in a machine
/// word for as long as it fits. Values are promoted to GMP on overflow and
/// demoted again as soon as they fit, so the class invariant is:
/// small() implies value < 2^64, !small() implies value >= 2^64.
///
/// One Stepper per thread; stepping is branch-light and allocation-free
/// once the big-value buffers have grown.
class Stepper {
 public:
  explicit Stepper(const Program& prog);

  void reset(const BigInt& start);
  void reset_small(std::uint64_t start);

  /// One map application. Returns the index of the rule that fired.
  std::size_t step();

  bool small() const { return small_; }
  std::uint64_t small_value() const { return sval_; }
  const BigInt& big_value() const { return bval_; }
  BigInt value() const { return small_ ? from_u64(sval_) : bval_; }
  std::uint32_t bits() const {
    return small_ ? static_cast<std::uint32_t>(64 - __builtin_clzll(sval_ | 1))
                  : bit_length(bval_);
  }

  std::size_t rule_count() const { return rule_count_; }
  std::size_t else_index() const { return rule_count_ - 1; }

  /// A copy of the current value cheap to compare against later positions.
  struct Snapshot {
    bool small = true;
    std::uint64_t sval = 0;
    BigInt bval;
  };
  Snapshot snapshot() const {
    Snapshot s;
    s.small = small_;
    if (small_) s.sval = sval_;
    else s.bval = bval_;
    return s;
  }
  bool equals(const Snapshot& s) const {
    if (small_ != s.small) return false;  // big always >= 2^64, small always below
    if (small_) return sval_ == s.sval;
    return mpz_cmp(bval_.get_mpz_t(), s.bval.get_mpz_t()) == 0;
  }

 private:
  struct OddRule {
    std::uint64_t divisor;      // 1 on the else rule
    std::uint64_t multiplier;   // q
    std::uint64_t denominator;  // r
    std::int32_t offset;        // +1 / -1
    std::uint32_t rule_index;
  };

  std::size_t step_small();
  std::size_t step_big();
  void maybe_demote();

  std::vector<OddRule> odd_;
  std::uint64_t guard_product_ = 0;  // product of guard divisors when it fits; 0 = disabled
  std::size_t rule_count_ = 0;

  bool small_ = true;
  std::uint64_t sval_ = 1;
  BigInt bval_;
};

}  // namespace rrmap
