#include "rrmap/stepper.hpp"

#include <stdexcept>

namespace rrmap {

Stepper::Stepper(const Program& prog) {
  require_valid(prog);
  rule_count_ = prog.rules.size();
  guard_product_ = 1;
  for (std::size_t i = 1; i < prog.rules.size(); ++i) {
    const StepRule& r = prog.rules[i];
    OddRule compiled{r.guard == GuardKind::Else ? 1 : r.divisor, r.multiplier,
                     r.denominator, r.offset, static_cast<std::uint32_t>(i)};
    odd_.push_back(compiled);
    if (compiled.divisor > 1) {
      if (guard_product_ > UINT64_MAX / compiled.divisor) guard_product_ = 0;
      else guard_product_ *= compiled.divisor;
    }
  }
  if (guard_product_ == 1) guard_product_ = 0;  // no divisible-by rules
}

void Stepper::reset(const BigInt& start) {
  if (mpz_sgn(start.get_mpz_t()) <= 0)
    throw std::invalid_argument("map domain is n >= 1");
  if (fits_u64(start)) {
    small_ = true;
    sval_ = to_u64(start);
  } else {
    small_ = false;
    bval_ = start;
  }
}

void Stepper::reset_small(std::uint64_t start) {
  if (start == 0) throw std::invalid_argument("map domain is n >= 1");
  small_ = true;
  sval_ = start;
}

std::size_t Stepper::step() { return small_ ? step_small() : step_big(); }

std::size_t Stepper::step_small() {
  std::uint64_t v = sval_;
  if ((v & 1) == 0) {
    sval_ = v >> 1;
    return 0;
  }
  const OddRule* fired = nullptr;
  for (const OddRule& r : odd_) {
    if (r.divisor == 1 || v % r.divisor == 0) {
      fired = &r;
      break;
    }
  }
  std::uint64_t t = fired->denominator == 1 ? v : v / fired->denominator;
  unsigned __int128 next = (unsigned __int128)t * fired->multiplier;
  next = fired->offset > 0 ? next + 1 : next - 1;
  next >>= 1;
  if (next <= UINT64_MAX) {
    sval_ = static_cast<std::uint64_t>(next);
  } else {
    small_ = false;
    mpz_set_ui(bval_.get_mpz_t(), static_cast<std::uint64_t>(next >> 64));
    mpz_mul_2exp(bval_.get_mpz_t(), bval_.get_mpz_t(), 64);
    mpz_add_ui(bval_.get_mpz_t(), bval_.get_mpz_t(), static_cast<std::uint64_t>(next));
  }
  return fired->rule_index;
}

std::size_t Stepper::step_big() {
  mpz_ptr v = bval_.get_mpz_t();
  if (mpz_even_p(v)) {
    mpz_tdiv_q_2exp(v, v, 1);
    maybe_demote();
    return 0;
  }
  const OddRule* fired = &odd_.back();
  if (odd_.size() > 1) {
    if (guard_product_ != 0) {
      // one long division gives every guard residue at once
      std::uint64_t rem = mpz_tdiv_ui(v, guard_product_);
      for (const OddRule& r : odd_) {
        if (r.divisor == 1 || rem % r.divisor == 0) {
          fired = &r;
          break;
        }
      }
    } else {
      for (const OddRule& r : odd_) {
        if (r.divisor == 1 || mpz_divisible_ui_p(v, r.divisor)) {
          fired = &r;
          break;
        }
      }
    }
  }
  if (fired->denominator != 1) mpz_divexact_ui(v, v, fired->denominator);
  mpz_mul_ui(v, v, fired->multiplier);
  if (fired->offset > 0) mpz_add_ui(v, v, 1);
  else mpz_sub_ui(v, v, 1);
  mpz_tdiv_q_2exp(v, v, 1);
  maybe_demote();
  return fired->rule_index;
}

void Stepper::maybe_demote() {
  if (mpz_sizeinbase(bval_.get_mpz_t(), 2) <= 64) {
    sval_ = mpz_get_ui(bval_.get_mpz_t());
    small_ = true;
  }
}

}  // namespace rrmap
