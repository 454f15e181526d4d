#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apnforge/bignat.hpp"

namespace apnforge {

// e(l,k) = sum_{j=0}^{l-1} 2^{jk}. Computes both the sum and the closed form
// (2^{lk}-1)/(2^k-1) and throws if they disagree. l, k >= 1.
BigNat e_lk(unsigned long l, unsigned long k);
// The two routes separately.
BigNat e_lk_sum(unsigned long l, unsigned long k);
BigNat e_lk_closed(unsigned long l, unsigned long k);

// Canonical residue of an exponent modulo 2^n - 1. Zero stays zero; any other
// value lands in [1, 2^n - 1], so the all-ones class is kept as 2^n - 1.
class ReducedExponent {
 public:
  const BigNat& value() const { return value_; }
  int n() const { return n_; }
  bool is_zero() const { return value_ == 0; }
  bool is_all_ones() const;

  friend bool operator==(const ReducedExponent&, const ReducedExponent&) = default;

 private:
  friend ReducedExponent reduce_mod_mersenne(const BigNat&, int);
  ReducedExponent(BigNat v, int n) : value_(std::move(v)), n_(n) {}
  BigNat value_;
  int n_;
};

// Folds n-bit chunks of d together until the value fits in n bits.
ReducedExponent reduce_mod_mersenne(const BigNat& d, int n);
// Machine-word shortcut for n <= 64.
std::uint64_t reduce_mod_mersenne_u64(const BigNat& d, int n);

// Popcount of the canonical residue (the algebraic degree of x^r).
int weight(const ReducedExponent& r);

// d^{-1} mod 2^n - 1 via extended Euclid, as a canonical residue.
// Throws NotInvertible when gcd(d, 2^n - 1) > 1.
BigNat mod_inverse(const BigNat& d, int n);

// -r mod 2^n - 1: the n-bit complement. Throws DomainError for r in {0, 2^n-1}.
ReducedExponent negate_complement(const ReducedExponent& r);

// 2^a * r mod 2^n - 1, i.e. a cyclic left rotation of the n-bit pattern.
ReducedExponent rotate(const ReducedExponent& r, long a);

// Multiset of bit positions in [0, n) standing for sum 2^p mod 2^n - 1.
struct ExpSet {
  std::vector<int> positions;  // sorted ascending
  int n = 1;

  bool is_set() const;  // no repeated positions
  friend bool operator==(const ExpSet&, const ExpSet&) = default;
};

ExpSet make_exp_set(std::vector<long> positions, int n);  // positions taken mod n
ExpSet exp_set(const ReducedExponent& r);
// Merges j,j -> j+1 (with n-1 wrapping to 0) until all positions are distinct.
ExpSet compress(const ExpSet& s);
// sum 2^p over the multiset, reduced mod 2^n - 1.
ReducedExponent exp_set_value(const ExpSet& s);

struct UniqueExpansionCheck {
  bool congruent;       // sum 2^{a_i} == sum 2^{b_i} mod 2^n - 1, computed directly
  bool same_residues;   // A mod n == B mod n as sets
};

// Both sides of the unique-binary-expansion lemma. Requires |A| = |B| and the
// elements of each list distinct mod n (DomainError otherwise).
UniqueExpansionCheck check_unique_expansion(std::span<const long> a, std::span<const long> b, int n);

// Parameter reflection: for n = 2m, e(l, m-k) ~ e(l, m+k); for n = 2m+1,
// e(l, m-k+1) ~ e(l, m+k). The shift satisfies 2^shift e(l,low) = e(l,high).
struct Reflection {
  unsigned long l;
  unsigned long low_k;
  unsigned long high_k;
  unsigned long shift;
};

// Requires n >= 3 and 0 < k < floor(n/2); DomainError otherwise.
Reflection reflect_k(unsigned long l, unsigned long k, int n);
bool reflection_holds(const Reflection& r, int n);

}  // namespace apnforge
