#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rrmap/bigint.hpp"
#include "rrmap/trajectory.hpp"

namespace rrmap {

/// Prime factorization by trial division up to 10^6, with multiplicity and
/// in nondecreasing order. A surviving cofactor below 10^12 must be prime
/// and is included; anything larger is left as an unknown cofactor.
struct Factorization {
  std::vector<std::pair<BigInt, unsigned>> factors;  // (prime, exponent)
  std::optional<BigInt> unknown_cofactor;

  std::vector<BigInt> flat() const;  // factors with multiplicity
  std::string str() const;           // "5^2*11*31*41"; "1" for n = 1
};

Factorization small_factorization(const BigInt& n);

/// (4^k - 1) / 3: binary 1010...101 with k ones.
BigInt picket_fence_value(unsigned k);

/// True iff n is odd and 3n + 1 is a power of two.
bool is_picket_fence(const BigInt& n);

struct PicketFenceNumber {
  unsigned k = 0;
  BigInt value;
  std::string binary;
  bool divisible_by_3 = false;
  Factorization factors;
};

PicketFenceNumber picket_fence_info(unsigned k);

/// First picket-fence value in the 3n+1 orbit of n0, n0 itself included.
/// Every orbit that reaches 1 passes through exactly one (the last odd
/// value before the pure power-of-two descent, or 1 itself).
BigInt exit_point(const BigInt& n0, const StopPolicy& caps = {});

struct ExitCensus {
  std::uint64_t starts = 0;                  // odd starts 1, 3, 5, ...
  std::map<BigInt, std::uint64_t> counts;    // exit value -> how many starts
  std::map<BigInt, BigInt> first_exiter;     // exit value -> smallest exiting start
};

ExitCensus exit_census(std::uint64_t count, unsigned shards = 1,
                       const StopPolicy& caps = {});

/// Smallest n0 >= 1 whose exit point equals the given picket-fence value.
std::optional<BigInt> first_to_exit(const BigInt& picket_value,
                                    std::uint64_t search_bound,
                                    const StopPolicy& caps = {});

}  // namespace rrmap
