#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace apnforge {

// Arbitrary-precision natural number. Exponents such as e(100,100) have
// thousands of decimal digits, so everything exponent-shaped is carried as one.
using BigNat = mpz_class;

inline BigNat pow2(unsigned long k) {
  BigNat r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

// 2^n - 1, the order of the multiplicative group of GF(2^n).
inline BigNat mersenne(unsigned long n) { return pow2(n) - 1; }

// Parses a non-negative decimal string; throws DomainError on anything else.
BigNat parse_bignat(std::string_view text);

inline std::string to_decimal(const BigNat& v) { return v.get_str(10); }

inline BigNat from_u64(std::uint64_t v) {
  BigNat r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

// Caller guarantees v < 2^64.
inline std::uint64_t to_u64(const BigNat& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, v.get_mpz_t());
  return out;
}

inline std::size_t bit_length(const BigNat& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigNat gcd(const BigNat& a, const BigNat& b) {
  BigNat r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace apnforge
