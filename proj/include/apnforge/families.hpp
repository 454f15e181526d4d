#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apnforge/bignat.hpp"

namespace apnforge {

// The known infinite families of APN power functions.
enum class Family { Gold, Kasami, Welch, NihoEven, NihoOdd, Inverse, Dobbertin };

inline constexpr Family kAllFamilies[] = {Family::Gold,    Family::Kasami,  Family::Welch,    Family::NihoEven,
                                          Family::NihoOdd, Family::Inverse, Family::Dobbertin};

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);
// "i" for Gold, Kasami and Dobbertin; "t" for the rest.
std::string_view param_name(Family f);

struct FamilyInstance {
  Family family = Family::Gold;
  unsigned long param = 0;
  int n = 0;
  BigNat exponent;          // the family formula, unreduced
  bool valid = false;       // the family's condition on (param, n) holds
  int expected_degree = 0;  // algebraic degree listed for the family

  std::string tag() const;  // e.g. "Gold(i=2)"
};

// Gold 2^i+1, gcd(i,n)=1 | Kasami 2^{2i}-2^i+1, gcd(i,n)=1 | Welch 2^t+3,
// n=2t+1 | Niho 2^t+2^{t/2}-1 (t even) or 2^t+2^{(3t+1)/2}-1 (t odd), n=2t+1 |
// Inverse 2^{2t}-1, n=2t+1 | Dobbertin 2^{4i}+2^{3i}+2^{2i}+2^i-1, n=5i.
// Throws DomainError for param = 0.
FamilyInstance family_exponent(Family family, unsigned long param, int n);

// Every valid instance for this n: Gold/Kasami over i in [1,n), Welch/Niho/
// Inverse for t = (n-1)/2, Dobbertin for i = n/5.
std::vector<FamilyInstance> valid_instances(int n);

enum class WitnessKind { Shift, InverseShift, None };

std::string_view to_string(WitnessKind k);

struct EquivalenceWitness {
  WitnessKind kind = WitnessKind::None;
  unsigned long a = 0;
  std::string details;
};

// Shift branch first (2^a d = e), then, when gcd(d, 2^n-1) = 1, the inverse
// branch (2^a d^{-1} = e); a ranges over [0, n).
EquivalenceWitness cyclotomic_equivalent(const BigNat& d, const BigNat& e, int n);

// Smallest member of the cyclotomic coset of d modulo 2^n - 1.
BigNat coset_min(const BigNat& d, int n);

struct FamilyMatch {
  FamilyInstance instance;
  EquivalenceWitness witness;
};

// All valid family instances cyclotomic equivalent to d over GF(2^n).
std::vector<FamilyMatch> classify(const BigNat& d, int n);

struct ElkWitness {
  unsigned long l = 0, k = 0, a = 0;
  friend auto operator<=>(const ElkWitness&, const ElkWitness&) = default;
};

// All (l, k, a) with l, k in [1, n), a in [0, n) and 2^a e(l,k) = target (or
// target^{-1} when use_inverse) mod 2^n - 1, sorted. Throws NotInvertible if
// use_inverse is set and the target has no inverse.
std::vector<ElkWitness> elk_equivalence_scan(int n, const BigNat& target, bool use_inverse);

struct DobbertinInverseEntry {
  int n = 0;
  unsigned long t = 0;
  bool invertible = false;
  std::vector<ElkWitness> witnesses;
  std::string note;
};

// One entry per n = 5t <= n_max. n_max <= 200.
std::vector<DobbertinInverseEntry> dobbertin_inverse_scan(int n_max, unsigned workers = 1);

enum class TheoremId { Welch, Kasami, KasamiInverse, NihoEven, NihoOdd, Dobbertin };

std::string_view to_string(TheoremId id);

struct Coincidence {
  int n = 0;
  unsigned long param = 0;  // family parameter (t or i)
  bool inverse = false;     // matched the inverse of the family exponent
  ElkWitness witness;
  BigNat elk_residue;       // e(l,k) mod 2^n - 1
};

// A named yes/no statement the scan checked against the printed result.
struct ClaimCheck {
  std::string claim;
  bool holds = false;
  std::string observed;
};

struct TheoremReport {
  TheoremId id = TheoremId::Welch;
  int n_lo = 0, n_hi = 0;
  std::vector<Coincidence> coincidences;  // everything found, canonical order
  std::vector<Coincidence> unexpected;    // outside the asserted exception set
  std::vector<ClaimCheck> claims;

  bool ok() const;
};

// Searches the full box l, k in [1,n), a in [0,n) for every n in [n_lo, n_hi]
// where the family is defined, and compares with the asserted exceptions.
TheoremReport theorem_scan(TheoremId id, int n_lo, int n_hi, unsigned workers = 1);

}  // namespace apnforge
