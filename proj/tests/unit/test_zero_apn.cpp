#include <numeric>
#include <random>

#include "doctest.h"

#include "apnforge/errors.hpp"
#include "apnforge/exponent.hpp"
#include "apnforge/zero_apn.hpp"

using namespace apnforge;

namespace {

// Root count of x^d + (x+1)^d + 1 by plain field powering.
std::uint64_t oracle_roots(const BigNat& d, const Field& f) {
  std::uint64_t roots = 0;
  for (FieldElement x : f.elements()) {
    if ((f.pow(x, d) + f.pow(x + FieldElement{1}, d)).bits == 1) ++roots;
  }
  return roots;
}

}  // namespace

TEST_CASE("x^21 roots") {
  CHECK(is_zero_apn_exact(21, Field::create(5)).is_zero_apn);
  CHECK_FALSE(is_zero_apn_exact(21, Field::create(6)).is_zero_apn);
  for (int n = 1; n <= 14; ++n) {
    const Field f = Field::create(n);
    const ZeroApnVerdict v = is_zero_apn_exact(21, f);
    CAPTURE(n);
    CHECK(v.nontrivial_root_count + 2 == oracle_roots(21, f));
    CHECK(v.is_zero_apn == (v.nontrivial_root_count == 0));
    CHECK(v.method == ZeroApnMethod::ExactBruteForce);
  }
}

TEST_CASE("exact 0-APN against the powering oracle") {
  for (int n = 2; n <= 9; ++n) {
    const Field f = Field::create(n);
    for (unsigned long d = 1; d < (1ul << n); ++d) {
      CAPTURE(n);
      CAPTURE(d);
      CHECK(is_zero_apn_exact(d, f).nontrivial_root_count + 2 == oracle_roots(d, f));
    }
    CHECK(is_zero_apn_exact(3, f).is_zero_apn);
  }
}

TEST_CASE("worker count does not change the verdict") {
  const Field f = Field::create(16);
  ScanOptions one, four;
  four.workers = 4;
  for (unsigned long d : {21ul, 7ul, 255ul, 1057ul}) {
    const auto a = is_zero_apn_exact(d, f, one), b = is_zero_apn_exact(d, f, four);
    CHECK(a.nontrivial_root_count == b.nontrivial_root_count);
  }
}

TEST_CASE("scan cap and deadline") {
  ScanOptions capped;
  capped.scan_cap = 10;
  CHECK_THROWS_AS(is_zero_apn_exact(21, Field::create(11), capped), ScanCapExceeded);
  ScanOptions late;
  late.deadline = Clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(is_zero_apn_exact(21, Field::create(20), late), BudgetExceeded);
}

TEST_CASE("sufficient conditions") {
  CHECK(thm_sufficient(3, 2, 5));
  CHECK_FALSE(thm_sufficient(3, 2, 6));
  CHECK(cascade_sufficient(3, 2, 7));
  for (unsigned long n = 2; n <= 40; n += 2) CHECK_FALSE(cascade_sufficient(2, 1, n));
  CHECK_THROWS_AS(thm_sufficient(1, 2, 5), DomainError);
  CHECK_THROWS_AS(cascade_sufficient(2, 0, 5), DomainError);

  for (unsigned long l = 2; l <= 12; ++l) {
    for (unsigned long k = 1; k <= 12; ++k) {
      for (unsigned long n = 1; n <= 60; ++n) {
        CHECK(thm_sufficient(l, k, n) == thm_sufficient_bignat(l, k, n));
        if (cascade_sufficient(l, k, n)) CHECK(thm_sufficient(l, k, n));
      }
    }
  }
}

TEST_CASE("sufficiency is sound") {
  for (unsigned long l = 2; l <= 6; ++l) {
    for (unsigned long k = 2; k <= 6; ++k) {
      for (int n = 2; n <= 14; ++n) {
        if (!thm_sufficient(l, k, n)) continue;
        CAPTURE(l);
        CAPTURE(k);
        CAPTURE(n);
        CHECK(is_zero_apn_exact(e_lk(l, k), Field::create(n)).is_zero_apn);
      }
    }
  }
}

TEST_CASE("relaxed condition against exact scans") {
  for (unsigned long l = 2; l <= 5; ++l) {
    for (unsigned long k = 1; k <= 5; ++k) {
      for (int n = 2; n <= 14; ++n) {
        if (!thm_relaxed_sufficient(l, k, n)) continue;
        CAPTURE(l);
        CAPTURE(k);
        CAPTURE(n);
        CHECK(is_zero_apn_exact(e_lk(l, k), Field::create(n)).is_zero_apn);
      }
    }
  }
}

TEST_CASE("dimension generation") {
  CHECK(generate_dims(100, 100, 1, 100000, DimCondition::Theorem).size() == 24242);
  for (unsigned long n : generate_dims(3, 2, 1, 20, DimCondition::Theorem)) CHECK(n % 6 != 0);
  CHECK(generate_dims(2, 1, 2, 10, DimCondition::Cascade) == std::vector<unsigned long>{3, 5, 7, 9});
  CHECK(generate_dims(3, 2, 2, 14, DimCondition::Exact) ==
        std::vector<unsigned long>{2, 3, 4, 5, 7, 8, 9, 10, 11, 13, 14});
  CHECK(generate_dims(2, 1, 1, 1, DimCondition::Theorem) == std::vector<unsigned long>{1});
  CHECK_THROWS_AS(generate_dims(2, 1, 5, 4, DimCondition::Theorem), DomainError);
  ScanOptions capped;
  capped.scan_cap = 8;
  CHECK_THROWS_AS(generate_dims(3, 2, 2, 9, DimCondition::Exact, capped), ScanCapExceeded);
}

TEST_CASE("x0-APN") {
  for (int n = 2; n <= 7; ++n) {
    const Field f = Field::create(n);
    for (unsigned long d = 1; d < (1ul << n); ++d) {
      const bool zero = is_zero_apn_exact(d, f).is_zero_apn;
      CHECK(is_x0_apn_exact(d, {0}, f) == zero);
      if (is_x0_apn_exact(d, {1}, f)) CHECK(zero);
    }
  }
  const Field f5 = Field::create(5);
  for (FieldElement x0 : f5.elements()) CHECK(is_x0_apn_exact(3, x0, f5));
  CHECK_THROWS_AS(is_x0_apn_exact(3, {0}, Field::create(13)), ScanCapExceeded);
}

TEST_CASE("violation profiles") {
  const ViolationProfile p32 = characterize_violations(3, 2);
  CHECK(p32.violating_degrees == std::vector<int>{6});
  const ViolationProfile p21 = characterize_violations(2, 1);
  CHECK(p21.candidate_degrees == std::vector<int>{2});
  CHECK(p21.violating_degrees.empty());
  CHECK_THROWS_AS(characterize_violations(3, 4, 10), ScanCapExceeded);

  for (unsigned long l = 2; l <= 4; ++l) {
    for (unsigned long k = 1; k <= 4; ++k) {
      const ViolationProfile p = characterize_violations(l, k);
      for (int n = 1; n <= 16; ++n) {
        CAPTURE(l);
        CAPTURE(k);
        CAPTURE(n);
        CHECK(predicts_zero_apn(p, n) == is_zero_apn_exact(e_lk(l, k), Field::create(n)).is_zero_apn);
      }
    }
  }
}

TEST_CASE("image classes") {
  const ImageClass c = image_class(2, 1, 4);
  CHECK(c.gcd_value == 3);
  CHECK(c.kind == ImageKind::ThreeToOne);
  CHECK(image_class(3, 1, 7).kind == ImageKind::Permutation);
  CHECK(image_class(3, 1, 9).kind == ImageKind::Other);
  CHECK_THROWS_AS(image_class(2, 2, 4), DomainError);
  std::mt19937_64 rng(17);
  int tested = 0;
  while (tested < 500) {
    const unsigned long n = rng() % 64 + 1, l = rng() % 100 + 1, k = rng() % 100 + 1;
    if (std::gcd(k, n) != 1) continue;
    ++tested;
    CHECK(image_class(l, k, n).gcd_value == gcd(e_lk(l, k), mersenne(n)));
  }
}
