#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace rrmap {

/// Arbitrary-precision nonnegative integers are mpz_class values throughout.
/// Serialized form is always the decimal string.
using BigInt = mpz_class;

inline std::uint32_t bit_length(const BigInt& v) {
  if (mpz_sgn(v.get_mpz_t()) == 0) return 0;
  return static_cast<std::uint32_t>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

inline bool fits_u64(const BigInt& v) {
  return mpz_sgn(v.get_mpz_t()) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) { return mpz_get_ui(v.get_mpz_t()); }

inline BigInt from_u64(std::uint64_t v) {
  BigInt out;
  mpz_set_ui(out.get_mpz_t(), v);
  return out;
}

inline BigInt from_u128(unsigned __int128 v) {
  BigInt out = from_u64(static_cast<std::uint64_t>(v >> 64));
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
  mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), static_cast<std::uint64_t>(v));
  return out;
}

inline BigInt pow_u(std::uint64_t base, std::uint64_t exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

/// Natural log of a positive big integer, exact to double precision.
inline double log_big(const BigInt& v) {
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(); }

inline BigInt parse_decimal(const std::string& text) {
  BigInt out;
  if (text.empty() || mpz_set_str(out.get_mpz_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("not a decimal integer: '" + text + "'");
  return out;
}

inline std::size_t decimal_digits(const BigInt& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 10);
}

/// Deterministic trial-division primality for small arguments (used to
/// validate p6/p9 parameters, never on trajectory values).
inline bool is_small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

}  // namespace rrmap
