#include <numeric>
#include <random>
#include <set>

#include "doctest.h"

#include "apnforge/errors.hpp"
#include "apnforge/exponent.hpp"
#include "apnforge/families.hpp"

using namespace apnforge;

namespace {

// Naive search: 2^a * (d or d^-1) - e divisible by 2^n - 1.
std::set<std::tuple<unsigned long, unsigned long, unsigned long>> naive_elk(int n, const BigNat& target) {
  std::set<std::tuple<unsigned long, unsigned long, unsigned long>> out;
  const BigNat m = mersenne(n);
  for (unsigned long l = 1; l < static_cast<unsigned long>(n); ++l) {
    for (unsigned long k = 1; k < static_cast<unsigned long>(n); ++k) {
      for (unsigned long a = 0; a < static_cast<unsigned long>(n); ++a) {
        if ((pow2(a) * e_lk(l, k) - target) % m == 0) out.insert({l, k, a});
      }
    }
  }
  return out;
}

bool has_tag(const std::vector<FamilyMatch>& ms, const std::string& tag, WitnessKind kind) {
  for (const FamilyMatch& m : ms) {
    if (m.instance.tag() == tag && m.witness.kind == kind) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("family formulas") {
  const FamilyInstance w = family_exponent(Family::Welch, 2, 5);
  CHECK(w.exponent == 7);
  CHECK(w.valid);
  const FamilyInstance g = family_exponent(Family::Gold, 2, 4);
  CHECK(g.exponent == 5);
  CHECK_FALSE(g.valid);
  CHECK(family_exponent(Family::Dobbertin, 1, 5).exponent == 29);
  CHECK(family_exponent(Family::Kasami, 3, 7).exponent == 57);
  CHECK(family_exponent(Family::NihoEven, 2, 5).exponent == 5);
  CHECK(family_exponent(Family::NihoOdd, 3, 7).exponent == 8 + 32 - 1);
  CHECK(family_exponent(Family::Inverse, 3, 7).exponent == 63);
  CHECK_FALSE(family_exponent(Family::NihoEven, 3, 7).valid);
  CHECK_FALSE(family_exponent(Family::Dobbertin, 2, 11).valid);
  CHECK(family_exponent(Family::Kasami, 2, 5).tag() == "Kasami(i=2)");
  CHECK(family_exponent(Family::Welch, 2, 5).tag() == "Welch(t=2)");
  CHECK_THROWS_AS(family_exponent(Family::Gold, 0, 5), DomainError);
  for (Family f : kAllFamilies) CHECK(parse_family(to_string(f)) == f);
  CHECK_FALSE(parse_family("Gould").has_value());
}

TEST_CASE("degree column on the canonical parameter range") {
  for (int n = 1; n <= 40; ++n) {
    for (const FamilyInstance& inst : valid_instances(n)) {
      CHECK(inst.valid);
      if (inst.family == Family::Kasami && 2 * inst.param > static_cast<unsigned long>(n)) continue;
      if (inst.family == Family::Welch && inst.param < 2) continue;
      CAPTURE(inst.tag());
      CAPTURE(n);
      CHECK(weight(reduce_mod_mersenne(inst.exponent, n)) == inst.expected_degree);
    }
  }
}

TEST_CASE("cyclotomic equivalence witnesses") {
  const EquivalenceWitness shift = cyclotomic_equivalent(21, 11, 5);
  CHECK(shift.kind == WitnessKind::Shift);
  CHECK(shift.a == 1);
  const EquivalenceWitness inv = cyclotomic_equivalent(7, 9, 5);
  CHECK(inv.kind == WitnessKind::InverseShift);
  CHECK(inv.a == 0);
  CHECK(cyclotomic_equivalent(e_lk(4, 4), 29, 5).kind == WitnessKind::Shift);
  CHECK(cyclotomic_equivalent(3, 7, 5).kind == WitnessKind::None);
  // No inverse branch when d shares a factor with 2^n - 1.
  CHECK(cyclotomic_equivalent(3, 43, 6).kind == WitnessKind::None);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 400; ++i) {
    const int n = static_cast<int>(rng() % 19) + 2;
    const BigNat m = mersenne(n);
    auto unit = [&] {
      for (;;) {
        BigNat v = BigNat(std::to_string(rng())) % m;
        if (v != 0 && gcd(v, m) == 1) return v;
      }
    };
    const BigNat a = unit();
    const unsigned long s = rng() % n, t = rng() % n;
    const BigNat b = rng() % 2 ? pow2(s) * a % m : pow2(s) * mod_inverse(a, n) % m;
    const BigNat c = rng() % 2 ? pow2(t) * b % m : pow2(t) * mod_inverse(b, n) % m;
    CHECK(cyclotomic_equivalent(a, a, n).kind == WitnessKind::Shift);
    CHECK(cyclotomic_equivalent(a, b, n).kind != WitnessKind::None);
    CHECK(cyclotomic_equivalent(b, a, n).kind != WitnessKind::None);
    CHECK(cyclotomic_equivalent(a, c, n).kind != WitnessKind::None);
    const EquivalenceWitness w = cyclotomic_equivalent(a, b, n);
    const BigNat base = w.kind == WitnessKind::Shift ? a : mod_inverse(a, n);
    CHECK((pow2(w.a) * base - b) % m == 0);
    if (w.kind == WitnessKind::Shift) CHECK(coset_min(a, n) == coset_min(b, n));
  }
}

TEST_CASE("coset minimum") {
  CHECK(coset_min(21, 5) == 11);
  for (int n = 1; n <= 30; ++n) CHECK(coset_min(1, n) == 1);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(rng() % 60) + 1;
    const BigNat d = BigNat(std::to_string(rng())) * BigNat(std::to_string(rng()));
    const BigNat base = coset_min(d, n);
    for (unsigned long a = 0; a < 70; a += 7) CHECK(coset_min(pow2(a) * d, n) == base);
  }
}

TEST_CASE("classification") {
  const auto five = classify(5, 5);
  CHECK(has_tag(five, "Gold(i=2)", WitnessKind::Shift));
  CHECK(has_tag(five, "NihoEven(t=2)", WitnessKind::Shift));
  CHECK(has_tag(classify(9, 5), "Welch(t=2)", WitnessKind::InverseShift));
  const auto d29 = classify(29, 5);
  CHECK(has_tag(d29, "Dobbertin(i=1)", WitnessKind::Shift));
  CHECK(classify(1, 7).empty());
  CHECK(classify(0, 7).empty());
  CHECK(classify(3, 1).empty());
}

TEST_CASE("e(l,k) equivalence scan matches the naive search") {
  for (int n = 2; n <= 12; ++n) {
    const BigNat m = mersenne(n);
    for (unsigned long t = 1; t < std::min<unsigned long>(m.get_ui(), 40); t += 3) {
      std::set<std::tuple<unsigned long, unsigned long, unsigned long>> got;
      for (const ElkWitness& w : elk_equivalence_scan(n, t, false)) got.insert({w.l, w.k, w.a});
      CAPTURE(n);
      CAPTURE(t);
      CHECK(got == naive_elk(n, t));
      if (gcd(BigNat(t), m) == 1) {
        std::set<std::tuple<unsigned long, unsigned long, unsigned long>> inv;
        for (const ElkWitness& w : elk_equivalence_scan(n, t, true)) inv.insert({w.l, w.k, w.a});
        CHECK(inv == naive_elk(n, mod_inverse(t, n)));
      } else {
        CHECK_THROWS_AS(elk_equivalence_scan(n, t, true), NotInvertible);
      }
    }
  }
  CHECK_THROWS_AS(elk_equivalence_scan(1, 1, false), DomainError);
}

TEST_CASE("Dobbertin witnesses") {
  auto contains = [](const std::vector<ElkWitness>& ws, unsigned long l, unsigned long k) {
    return std::any_of(ws.begin(), ws.end(), [&](const ElkWitness& w) { return w.l == l && w.k == k; });
  };
  CHECK(contains(elk_equivalence_scan(5, family_exponent(Family::Dobbertin, 1, 5).exponent, false), 4, 4));
  CHECK(contains(elk_equivalence_scan(10, family_exponent(Family::Dobbertin, 2, 10).exponent, false), 9, 2));
  CHECK(elk_equivalence_scan(15, family_exponent(Family::Dobbertin, 3, 15).exponent, false).empty());

  const auto scan = dobbertin_inverse_scan(40);
  REQUIRE(scan.size() == 8);
  CHECK(scan[0].invertible);
  CHECK(scan[0].note == "D_t^-1 = 15");
  CHECK(contains(scan[0].witnesses, 4, 1));
  CHECK_FALSE(scan[1].invertible);
  for (std::size_t i = 1; i < scan.size(); ++i) CHECK(scan[i].witnesses.empty());
  for (const auto& e : scan) CHECK(e.invertible == (e.n % 2 == 1));
  CHECK_THROWS_AS(dobbertin_inverse_scan(205), DomainError);
}

TEST_CASE("theorem scans on small ranges") {
  const TheoremReport welch = theorem_scan(TheoremId::Welch, 3, 15);
  CHECK(welch.ok());
  CHECK(welch.claims.size() == 2);
  for (const Coincidence& c : welch.coincidences) CHECK(c.param <= 2);

  const TheoremReport kasami = theorem_scan(TheoremId::Kasami, 3, 20);
  CHECK(kasami.unexpected.empty());
  REQUIRE(kasami.claims.size() == 1);
  CHECK(kasami.claims[0].observed == "{3,11,17,21}");

  const TheoremReport outside = theorem_scan(TheoremId::Kasami, 6, 20);
  CHECK(outside.claims.empty());
  CHECK(outside.ok());

  const TheoremReport dob = theorem_scan(TheoremId::Dobbertin, 5, 30);
  CHECK(dob.ok());
  std::set<int> dims;
  for (const Coincidence& c : dob.coincidences) dims.insert(c.n);
  CHECK(dims == std::set<int>{5, 10});

  CHECK_THROWS_AS(theorem_scan(TheoremId::Welch, 9, 3), DomainError);
}

TEST_CASE("theorem scan is worker independent") {
  const TheoremReport a = theorem_scan(TheoremId::KasamiInverse, 3, 21, 1);
  const TheoremReport b = theorem_scan(TheoremId::KasamiInverse, 3, 21, 4);
  REQUIRE(a.coincidences.size() == b.coincidences.size());
  for (std::size_t i = 0; i < a.coincidences.size(); ++i) {
    CHECK(a.coincidences[i].witness == b.coincidences[i].witness);
    CHECK(a.coincidences[i].n == b.coincidences[i].n);
  }
}
