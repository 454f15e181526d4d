#include "apnforge/exponent.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "apnforge/errors.hpp"

namespace apnforge {

BigNat parse_bignat(std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw DomainError("not a non-negative decimal integer: '" + std::string(text) + "'");
  }
  return BigNat(std::string(text), 10);
}

namespace {

void require_positive_n(int n) {
  if (n < 1) throw DomainError("n must be >= 1, got " + std::to_string(n));
}

}  // namespace

BigNat e_lk_sum(unsigned long l, unsigned long k) {
  if (l < 1 || k < 1) throw DomainError("e(l,k) needs l, k >= 1");
  BigNat sum;
  for (unsigned long j = 0; j < l; ++j) mpz_setbit(sum.get_mpz_t(), j * k);
  return sum;
}

BigNat e_lk_closed(unsigned long l, unsigned long k) {
  if (l < 1 || k < 1) throw DomainError("e(l,k) needs l, k >= 1");
  BigNat q;
  const BigNat num = mersenne(l * k);
  const BigNat den = mersenne(k);
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

BigNat e_lk(unsigned long l, unsigned long k) {
  BigNat sum = e_lk_sum(l, k);
  if (sum * mersenne(k) != mersenne(l * k)) {
    throw Error("e(l,k) sum and closed form disagree for l=" + std::to_string(l) + ", k=" + std::to_string(k));
  }
  return sum;
}

bool ReducedExponent::is_all_ones() const {
  return value_ != 0 && mpz_popcount(value_.get_mpz_t()) == static_cast<mp_bitcnt_t>(n_);
}

ReducedExponent reduce_mod_mersenne(const BigNat& d, int n) {
  require_positive_n(n);
  if (d < 0) throw DomainError("exponent must be non-negative");
  const auto width = static_cast<mp_bitcnt_t>(n);
  BigNat v = d;
  BigNat low, high;
  while (bit_length(v) > static_cast<std::size_t>(n)) {
    mpz_fdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), width);
    mpz_fdiv_q_2exp(high.get_mpz_t(), v.get_mpz_t(), width);
    v = low + high;
  }
  return ReducedExponent(std::move(v), n);
}

std::uint64_t reduce_mod_mersenne_u64(const BigNat& d, int n) {
  if (n > 64) throw DomainError("machine-word reduction needs n <= 64");
  return to_u64(reduce_mod_mersenne(d, n).value());
}

int weight(const ReducedExponent& r) { return static_cast<int>(mpz_popcount(r.value().get_mpz_t())); }

BigNat mod_inverse(const BigNat& d, int n) {
  require_positive_n(n);
  const BigNat m = mersenne(static_cast<unsigned long>(n));
  // Extended Euclid on (d mod m, m), tracking the coefficient of d.
  BigNat r0 = m, r1 = d % m;
  BigNat s0 = 0, s1 = 1;
  while (r1 != 0) {
    const BigNat q = r0 / r1;
    BigNat t = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(t);
    t = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(t);
  }
  if (m == 1) return 1;  // GF(2): every exponent acts as the identity on F_2^*
  if (r0 != 1) {
    throw NotInvertible(to_decimal(d) + " is not invertible modulo 2^" + std::to_string(n) + "-1 (gcd " +
                        to_decimal(r0) + ")");
  }
  BigNat inv = s0 % m;
  if (inv < 0) inv += m;
  return inv;
}

ReducedExponent negate_complement(const ReducedExponent& r) {
  if (r.is_zero() || r.is_all_ones()) {
    throw DomainError("complement of the zero / all-ones class is degenerate");
  }
  return reduce_mod_mersenne(mersenne(static_cast<unsigned long>(r.n())) - r.value(), r.n());
}

ReducedExponent rotate(const ReducedExponent& r, long a) {
  const int n = r.n();
  if (r.is_zero()) return r;
  const auto s = static_cast<unsigned long>(((a % n) + n) % n);
  if (s == 0) return r;
  BigNat hi, lo;
  mpz_mul_2exp(lo.get_mpz_t(), r.value().get_mpz_t(), s);
  mpz_fdiv_r_2exp(lo.get_mpz_t(), lo.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  mpz_fdiv_q_2exp(hi.get_mpz_t(), r.value().get_mpz_t(), static_cast<mp_bitcnt_t>(n) - s);
  return reduce_mod_mersenne(lo | hi, n);
}

bool ExpSet::is_set() const { return std::adjacent_find(positions.begin(), positions.end()) == positions.end(); }

ExpSet make_exp_set(std::vector<long> positions, int n) {
  require_positive_n(n);
  ExpSet s;
  s.n = n;
  s.positions.reserve(positions.size());
  for (long p : positions) s.positions.push_back(static_cast<int>(((p % n) + n) % n));
  std::sort(s.positions.begin(), s.positions.end());
  return s;
}

ExpSet exp_set(const ReducedExponent& r) {
  ExpSet s;
  s.n = r.n();
  for (int p = 0; p < r.n(); ++p) {
    if (mpz_tstbit(r.value().get_mpz_t(), static_cast<mp_bitcnt_t>(p))) s.positions.push_back(p);
  }
  return s;
}

ExpSet compress(const ExpSet& s) {
  std::vector<long> count(static_cast<std::size_t>(s.n), 0);
  for (int p : s.positions) ++count[static_cast<std::size_t>(p)];
  // Ascending sweeps with carries; each merge drops the multiset size by one.
  bool merged = true;
  while (merged) {
    merged = false;
    for (int p = 0; p < s.n; ++p) {
      auto& c = count[static_cast<std::size_t>(p)];
      if (c >= 2) {
        const long carry = c / 2;
        c %= 2;
        count[static_cast<std::size_t>((p + 1) % s.n)] += carry;
        merged = true;
      }
    }
  }
  ExpSet out;
  out.n = s.n;
  for (int p = 0; p < s.n; ++p) {
    if (count[static_cast<std::size_t>(p)] != 0) out.positions.push_back(p);
  }
  return out;
}

ReducedExponent exp_set_value(const ExpSet& s) {
  BigNat sum;
  for (int p : s.positions) sum += pow2(static_cast<unsigned long>(p));
  return reduce_mod_mersenne(sum, s.n);
}

UniqueExpansionCheck check_unique_expansion(std::span<const long> a, std::span<const long> b, int n) {
  require_positive_n(n);
  if (a.size() != b.size()) throw DomainError("unique expansion needs lists of equal length");
  auto residues = [n](std::span<const long> xs) {
    std::vector<long> r;
    for (long x : xs) {
      if (x < 0) throw DomainError("exponent positions must be non-negative");
      r.push_back(x % n);
    }
    std::sort(r.begin(), r.end());
    if (std::adjacent_find(r.begin(), r.end()) != r.end()) {
      throw DomainError("positions must be pairwise distinct modulo n");
    }
    return r;
  };
  const auto ra = residues(a);
  const auto rb = residues(b);
  const BigNat m = mersenne(static_cast<unsigned long>(n));
  BigNat sa, sb;
  for (long x : a) sa += pow2(static_cast<unsigned long>(x));
  for (long x : b) sb += pow2(static_cast<unsigned long>(x));
  const BigNat diff = sa - sb;
  BigNat rem;
  mpz_mod(rem.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
  return {rem == 0, ra == rb};
}

Reflection reflect_k(unsigned long l, unsigned long k, int n) {
  if (n < 3) throw DomainError("reflection needs n >= 3");
  const auto m = static_cast<unsigned long>(n / 2);
  if (k == 0 || k >= m) {
    throw DomainError("reflection needs 0 < k < m = " + std::to_string(m) + ", got k=" + std::to_string(k));
  }
  if (l < 1) throw DomainError("reflection needs l >= 1");
  if (n % 2 == 0) return {l, m - k, m + k, l * k + l * m + m - k};
  return {l, m - k + 1, m + k, l * (m + k) + m - k + 1};
}

bool reflection_holds(const Reflection& r, int n) {
  const auto low = reduce_mod_mersenne(e_lk(r.l, r.low_k), n);
  const auto high = reduce_mod_mersenne(e_lk(r.l, r.high_k), n);
  return rotate(low, static_cast<long>(r.shift % static_cast<unsigned long>(n))) == high;
}

}  // namespace apnforge
