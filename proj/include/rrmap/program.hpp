#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrmap/bigint.hpp"
#include "rrmap/rational.hpp"

namespace rrmap {

enum class GuardKind { Even, DivisibleBy, Else };

/// One guarded clause of a residue-rule map. The even rule always carries
/// the fixed action n -> n/2; divisible-by and else rules carry the affine
/// action n -> (q * (n/r) + c) / 2 with q odd, r in {1, d}, c = +-1.
struct StepRule {
  GuardKind guard = GuardKind::Else;
  std::uint64_t divisor = 0;      // guard divisor d, DivisibleBy only (odd, >= 3)
  std::uint64_t multiplier = 0;   // q (odd)
  std::uint64_t denominator = 1;  // r, 1 or == divisor
  std::int32_t offset = 1;        // +1 or -1

  static StepRule even() {
    StepRule r;
    r.guard = GuardKind::Even;
    return r;
  }
  static StepRule divisible_by(std::uint64_t d, std::uint64_t q, std::uint64_t r,
                               std::int32_t c) {
    StepRule out;
    out.guard = GuardKind::DivisibleBy;
    out.divisor = d;
    out.multiplier = q;
    out.denominator = r;
    out.offset = c;
    return out;
  }
  static StepRule otherwise(std::uint64_t q, std::int32_t c) {
    StepRule out;
    out.guard = GuardKind::Else;
    out.multiplier = q;
    out.denominator = 1;
    out.offset = c;
    return out;
  }

  friend bool operator==(const StepRule&, const StepRule&) = default;
};

/// An ordered list of guarded rules defining one map on the positive
/// integers: the first rule is the even rule, divisible-by rules follow in
/// order, the final rule is the else rule. Exactly one rule fires per value.
///
/// Equality is over the rules; the id is a display label only, so a program
/// round-tripped through the DSL compares equal to its canonical original.
struct Program {
  std::string id;
  std::vector<StepRule> rules;

  friend bool operator==(const Program& a, const Program& b) { return a.rules == b.rules; }
};

enum class SignOrder { MinusPlus, PlusMinus };  // offset of the divisible rule, then of else

Program make_p1();
Program make_p1m();
Program make_p2();
Program make_p4(std::uint64_t m);
Program make_p6(std::uint64_t excluded_prime);
Program make_p9(std::uint64_t p, SignOrder order);

/// Named constructor: name in {p1, p1m, p2, p4, p6, p9}; p4 takes {m},
/// p6 takes {prime}, p9 takes {p, first_offset (+1 or -1)}.
Program canonical_program(const std::string& name, const std::vector<std::int64_t>& params = {});

/// Accepts the CLI id grammar (p1, p1m, p2, p4:<m>, p6:<prime>,
/// p9:<p>:<-+|+->) or "dsl:<rule text>".
Program parse_program_spec(const std::string& spec);

/// Every violated invariant, as human-readable messages; empty means valid.
std::vector<std::string> validate_program(const Program& prog);

/// Throws std::invalid_argument listing all violations.
void require_valid(const Program& prog);

/// Index of the rule that fires on n (first match in order).
std::size_t match_rule(const Program& prog, const BigInt& n);

/// Reference single-step map. The Stepper is the fast path; this is the
/// plainly-written one the tests compare against.
BigInt step(const Program& prog, const BigInt& n);

/// Which rule fires on n and its asymptotic growth factor per combined
/// step: 1/2 for the even rule, q/(2r) otherwise.
std::pair<std::size_t, Rational> classify_step(const Program& prog, const BigInt& n);

/// "even", "mod<d>" or "else"; used for fire-count labels in reports.
std::string rule_label(const StepRule& rule);

}  // namespace rrmap
