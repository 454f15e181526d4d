#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "apnforge/bignat.hpp"
#include "apnforge/field.hpp"
#include "apnforge/parallel.hpp"

namespace apnforge {

enum class ZeroApnMethod { GcdSufficient, CascadeSufficient, ExactBruteForce };

std::string_view to_string(ZeroApnMethod m);

struct ZeroApnVerdict {
  BigNat exponent;  // the reduced exponent that was tested
  int n = 0;
  bool is_zero_apn = false;
  std::uint64_t nontrivial_root_count = 0;
  ZeroApnMethod method = ZeroApnMethod::ExactBruteForce;
};

// gcd(kl, n) = 1 and gcd(e(l-1,k), 2^n-1) = 1, the second via the closed form
// 2^{gcd(l-1,n)} - 1 (valid because the first condition forces gcd(k,n) = 1).
bool thm_sufficient(unsigned long l, unsigned long k, unsigned long n);
// Same conditions with the second gcd taken directly on BigNats.
bool thm_sufficient_bignat(unsigned long l, unsigned long k, unsigned long n);

// gcd(jk, n) = 1 for every j in [2, l].
bool cascade_sufficient(unsigned long l, unsigned long k, unsigned long n);

// Experimental: gcd(kl, n) <= 2, gcd(e(l-1,k), 2^n-1) = 1, and when
// gcd(kl, n) = 2 additionally 3 | e(l,k). Roots then lie in F_4, and 3 | d
// rules out the two non-trivial ones.
bool thm_relaxed_sufficient(unsigned long l, unsigned long k, unsigned long n);

enum class DimCondition { Theorem, Cascade, Exact, TheoremRelaxed };

// Ascending list of n in [n_lo, n_hi] meeting the condition. Exact runs
// is_zero_apn_exact per dimension and is subject to the scan cap.
std::vector<unsigned long> generate_dims(unsigned long l, unsigned long k, unsigned long n_lo, unsigned long n_hi,
                                         DimCondition condition, const ScanOptions& options = {});

// Counts x in GF(2^n) with x^d + (x+1)^d + 1 = 0. 0 and 1 are always roots.
// Throws ScanCapExceeded when n > options.scan_cap.
ZeroApnVerdict is_zero_apn_exact(const BigNat& d, const Field& field, const ScanOptions& options = {});

inline constexpr int kMaxQuadraticDegree = 12;

// Brute force over all (y, z): every solution of F(x0)+F(y)+F(z)+F(x0+y+z) = 0
// must satisfy (x0+y)(x0+z)(y+z) = 0. n <= 12.
bool is_x0_apn_exact(const BigNat& d, FieldElement x0, const Field& field);

struct ViolationProfile {
  unsigned long l = 0, k = 0;
  std::vector<int> candidate_degrees;   // divisors > 1 of jk, 2 <= j <= l
  std::vector<int> violating_degrees;   // minimal ones with a non-trivial root
};

// Tests every candidate subfield exactly. Throws ScanCapExceeded if a candidate
// degree exceeds probe_cap.
ViolationProfile characterize_violations(unsigned long l, unsigned long k, int probe_cap = kDefaultScanCap);

// 0-APN over GF(2^n) iff no violating degree divides n.
bool predicts_zero_apn(const ViolationProfile& profile, unsigned long n);

enum class ImageKind { Permutation, ThreeToOne, Other };

std::string_view to_string(ImageKind k);

struct ImageClass {
  BigNat gcd_value;  // gcd(e(l,k), 2^n - 1) = 2^{gcd(l,n)} - 1
  ImageKind kind;
};

// Requires gcd(k, n) = 1 (DomainError otherwise).
ImageClass image_class(unsigned long l, unsigned long k, unsigned long n);

}  // namespace apnforge
