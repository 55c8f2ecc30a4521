#include "rrmap/picket.hpp"

#include <stdexcept>

#include "rrmap/shard.hpp"
#include "rrmap/stepper.hpp"

namespace rrmap {
namespace {

constexpr std::uint64_t kTrialBound = 1'000'000;
// below (trial bound)^2 a survivor of trial division is prime
const BigInt kPrimeCertain = from_u64(kTrialBound) * from_u64(kTrialBound);

bool is_picket_small(std::uint64_t v) {
  if ((v & 1) == 0) return false;
  if (v > (UINT64_MAX - 1) / 3) return false;  // callers promote first
  std::uint64_t t = 3 * v + 1;
  return (t & (t - 1)) == 0;
}

bool stepper_at_picket(const Stepper& st) {
  if (st.small()) {
    std::uint64_t v = st.small_value();
    if (v <= (UINT64_MAX - 1) / 3) return is_picket_small(v);
  }
  return is_picket_fence(st.value());
}

}  // namespace

std::vector<BigInt> Factorization::flat() const {
  std::vector<BigInt> out;
  for (const auto& [p, e] : factors)
    for (unsigned i = 0; i < e; ++i) out.push_back(p);
  return out;
}

std::string Factorization::str() const {
  if (factors.empty() && !unknown_cofactor) return "1";
  std::string out;
  for (const auto& [p, e] : factors) {
    if (!out.empty()) out += "*";
    out += to_decimal(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  if (unknown_cofactor) {
    if (!out.empty()) out += "*";
    out += to_decimal(*unknown_cofactor) + "?";
  }
  return out;
}

Factorization small_factorization(const BigInt& n) {
  if (mpz_sgn(n.get_mpz_t()) <= 0) throw std::invalid_argument("factorization needs n >= 1");
  Factorization out;
  BigInt rest = n;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) out.factors.emplace_back(from_u64(p), e);
  };
  strip(2);
  strip(3);
  for (std::uint64_t p = 5; p <= kTrialBound; p += 6) {
    if (rest == 1) break;
    if (fits_u64(rest)) {
      std::uint64_t r = to_u64(rest);
      if (p > r / p) break;  // p^2 > rest: rest is prime
    }
    strip(p);
    strip(p + 2);
  }
  if (rest != 1) {
    if (rest < kPrimeCertain) out.factors.emplace_back(rest, 1);
    else out.unknown_cofactor = rest;
  }
  return out;
}

BigInt picket_fence_value(unsigned k) {
  if (k < 1) throw std::invalid_argument("picket-fence index k must be >= 1");
  BigInt v = pow_u(4, k);
  mpz_sub_ui(v.get_mpz_t(), v.get_mpz_t(), 1);
  mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), 3);
  return v;
}

bool is_picket_fence(const BigInt& n) {
  if (mpz_sgn(n.get_mpz_t()) <= 0 || mpz_even_p(n.get_mpz_t())) return false;
  BigInt t = n * 3 + 1;
  return mpz_popcount(t.get_mpz_t()) == 1;
}

PicketFenceNumber picket_fence_info(unsigned k) {
  PicketFenceNumber out;
  out.k = k;
  out.value = picket_fence_value(k);
  out.binary = out.value.get_str(2);
  out.divisible_by_3 = mpz_divisible_ui_p(out.value.get_mpz_t(), 3);
  out.factors = small_factorization(out.value);
  return out;
}

BigInt exit_point(const BigInt& n0, const StopPolicy& caps) {
  if (mpz_sgn(n0.get_mpz_t()) <= 0) throw std::invalid_argument("n0 must be >= 1");
  static const Program p1 = make_p1();
  Stepper st(p1);
  st.reset(n0);
  for (std::uint64_t i = 0; i <= caps.max_iterations; ++i) {
    if (stepper_at_picket(st)) return st.value();
    if (st.bits() > caps.max_bits || i == caps.max_iterations)
      throw NonConvergent("no picket-fence exit from " + to_decimal(n0) + " within caps");
    st.step();
  }
  throw NonConvergent("unreachable");
}

ExitCensus exit_census(std::uint64_t count, unsigned shards, const StopPolicy& caps) {
  if (count < 1) throw std::invalid_argument("census needs at least one start");
  static const Program p1 = make_p1();

  struct Part {
    std::map<BigInt, std::uint64_t> counts;
    std::map<BigInt, BigInt> first;
  };
  Part merged = sharded_reduce(
      count, shards, Part{},
      [&](std::uint64_t begin, std::uint64_t len) {
        Part part;
        Stepper st(p1);
        for (std::uint64_t i = begin; i < begin + len; ++i) {
          std::uint64_t n0 = 2 * i + 1;
          st.reset_small(n0);
          std::uint64_t steps = 0;
          while (!stepper_at_picket(st)) {
            if (steps++ >= caps.max_iterations || st.bits() > caps.max_bits)
              throw NonConvergent("no picket-fence exit from " + std::to_string(n0) +
                                  " within caps");
            st.step();
          }
          BigInt exit = st.value();
          ++part.counts[exit];
          part.first.try_emplace(std::move(exit), from_u64(n0));
        }
        return part;
      },
      [](Part& into, Part& part) {
        for (auto& [value, c] : part.counts) into.counts[value] += c;
        // chunks are merged in ascending start order, so the first entry wins
        for (auto& [value, n0] : part.first) into.first.try_emplace(value, n0);
      });

  ExitCensus census;
  census.starts = count;
  census.counts = std::move(merged.counts);
  census.first_exiter = std::move(merged.first);
  return census;
}

std::optional<BigInt> first_to_exit(const BigInt& picket_value, std::uint64_t search_bound,
                                    const StopPolicy& caps) {
  if (!is_picket_fence(picket_value))
    throw std::invalid_argument(to_decimal(picket_value) + " is not a picket-fence value");
  for (std::uint64_t n0 = 1; n0 <= search_bound; n0 += 2)
    if (exit_point(from_u64(n0), caps) == picket_value) return from_u64(n0);
  return std::nullopt;
}

}  // namespace rrmap
