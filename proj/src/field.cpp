#include "apnforge/field.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

#include "apnforge/errors.hpp"
#include "apnforge/exponent.hpp"

namespace apnforge {

u128 clmul_portable(std::uint64_t a, std::uint64_t b) {
  // 4-bit windows over b.
  u128 table[16];
  table[0] = 0;
  table[1] = a;
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2] << 1;
    table[i + 1] = table[i] ^ a;
  }
  u128 r = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    r = (r << 4) ^ table[(b >> shift) & 15];
  }
  return r;
}

#if defined(__PCLMUL__)
u128 clmul(std::uint64_t a, std::uint64_t b) {
  const __m128i p = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                         _mm_cvtsi64_si128(static_cast<long long>(b)), 0);
  const auto lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
  const auto hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)));
  return (u128(hi) << 64) | lo;
}
bool clmul_is_hardware() { return true; }
#else
u128 clmul(std::uint64_t a, std::uint64_t b) { return clmul_portable(a, b); }
bool clmul_is_hardware() { return false; }
#endif

namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

int poly_degree(u128 p) {
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  if (hi != 0) return 127 - __builtin_clzll(hi);
  const auto lo = static_cast<std::uint64_t>(p);
  return lo == 0 ? -1 : 63 - __builtin_clzll(lo);
}

u128 poly_mod(u128 a, u128 m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
  return a;
}

u128 poly_gcd(u128 a, u128 b) {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// Byte-sliced reduction tables for x^degree + tail. Works whether or not the
// polynomial is irreducible, which is what the irreducibility test needs.
class Reducer {
 public:
  Reducer(int degree, std::uint64_t tail) : degree_(degree), mask_(low_mask(degree)) {
    const int high_bits = degree - 1;  // a reduced product has degree <= 2n-2
    bytes_ = (high_bits + 7) / 8;
    table_.assign(static_cast<std::size_t>(bytes_) * 256, 0);
    // powers[s] = x^{n+s} mod f
    std::vector<std::uint64_t> powers(static_cast<std::size_t>(std::max(high_bits, 0)));
    const u128 full = (u128(1) << degree) | tail;
    u128 r = tail;
    for (int s = 0; s < high_bits; ++s) {
      powers[static_cast<std::size_t>(s)] = static_cast<std::uint64_t>(r);
      r <<= 1;
      if ((r >> degree) & 1) r ^= full;
    }
    for (int j = 0; j < bytes_; ++j) {
      for (int b = 0; b < 256; ++b) {
        std::uint64_t acc = 0;
        for (int t = 0; t < 8; ++t) {
          const int s = 8 * j + t;
          if (s < high_bits && ((b >> t) & 1)) acc ^= powers[static_cast<std::size_t>(s)];
        }
        table_[static_cast<std::size_t>(j) * 256 + static_cast<std::size_t>(b)] = acc;
      }
    }
  }

  std::uint64_t reduce(u128 p) const {
    std::uint64_t low = static_cast<std::uint64_t>(p) & mask_;
    const auto high = static_cast<std::uint64_t>(p >> degree_);
    const std::uint64_t* t = table_.data();
    for (int j = 0; j < bytes_; ++j, t += 256) low ^= t[(high >> (8 * j)) & 0xff];
    return low;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(clmul(a, b)); }
  int bytes() const { return bytes_; }
  const std::vector<std::uint64_t>& table() const { return table_; }

 private:
  int degree_;
  std::uint64_t mask_;
  int bytes_ = 0;
  std::vector<std::uint64_t> table_;
};

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxFieldDegree) {
    throw DomainError("field degree must be in [1, 64], got " + std::to_string(degree));
  }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

bool is_irreducible(int degree, std::uint64_t tail) {
  check_degree(degree);
  if (degree < 64 && (tail >> degree) != 0) throw DomainError("modulus tail has bits at or above the degree");
  if (degree == 1) return true;
  if ((tail & 1) == 0) return false;  // divisible by x
  // Ben-Or: f is irreducible iff gcd(x^{2^i} - x, f) = 1 for 1 <= i <= n/2.
  const Reducer red(degree, tail);
  const u128 f = (u128(1) << degree) | tail;
  std::uint64_t xpow = 2;  // x
  for (int i = 1; i <= degree / 2; ++i) {
    xpow = red.mul(xpow, xpow);
    if (poly_gcd(f, u128(xpow ^ 2)) != 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> irreducible_tails(int degree, std::size_t count) {
  check_degree(degree);
  std::vector<std::uint64_t> out;
  const std::uint64_t limit = low_mask(degree);
  for (std::uint64_t tail = 1; out.size() < count; tail += 2) {
    if (is_irreducible(degree, tail)) out.push_back(tail);
    if (tail >= limit - 1) break;
  }
  return out;
}

struct Field::Shared {
  Reducer reducer;
  mutable std::once_flag log_once;
  mutable std::unique_ptr<LogTables> logs;

  Shared(int degree, std::uint64_t tail) : reducer(degree, tail) {}
};

Field::Field(int degree, std::uint64_t tail)
    : degree_(degree), tail_(tail), mask_(low_mask(degree)), shared_(std::make_shared<Shared>(degree, tail)) {
  reduce_bytes_ = shared_->reducer.bytes();
}

Field Field::create(int degree) {
  check_degree(degree);
  return Field(degree, irreducible_tails(degree, 1).front());
}

Field Field::with_modulus(int degree, std::uint64_t tail) {
  check_degree(degree);
  if ((tail & 1) == 0 || !is_irreducible(degree, tail)) {
    throw DomainError("x^" + std::to_string(degree) + " + tail is not an irreducible polynomial with constant term 1");
  }
  return Field(degree, tail);
}

BigNat Field::modulus() const { return pow2(static_cast<unsigned long>(degree_)) + from_u64(tail_); }

FieldElement Field::element(std::uint64_t bits) const {
  if ((bits & ~mask_) != 0) throw DomainError("element has bits above degree " + std::to_string(degree_));
  return {bits};
}

std::uint64_t Field::reduce(u128 product) const { return shared_->reducer.reduce(product); }

FieldElement Field::pow_u64(FieldElement a, std::uint64_t e) const {
  const Reducer& red = shared_->reducer;
  if (e == 0) return {1};
  std::uint64_t result = a.bits;
  for (int bit = 62 - __builtin_clzll(e); bit >= 0; --bit) {
    result = red.reduce(clmul(result, result));
    if ((e >> bit) & 1) result = red.reduce(clmul(result, a.bits));
  }
  return {result};
}

FieldElement Field::pow(FieldElement a, const BigNat& e) const {
  return pow_u64(a, reduce_mod_mersenne_u64(e, degree_));
}

FieldElement Field::inv(FieldElement a) const {
  if (a.bits == 0) throw DivisionByZero("inverse of zero in GF(2^" + std::to_string(degree_) + ")");
  return pow_u64(a, mask_ - 1);
}

std::vector<ElementRange> Field::chunks(std::size_t parts) const {
  parts = std::max<std::size_t>(parts, 1);
  const u128 total = u128(mask_) + 1;
  if (u128(parts) > total) parts = static_cast<std::size_t>(total);
  std::vector<ElementRange> out;
  out.reserve(parts);
  u128 start = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    const u128 len = total / parts + (u128(i) < total % parts ? 1 : 0);
    out.emplace_back(static_cast<std::uint64_t>(start), static_cast<std::uint64_t>(start + len - 1));
    start += len;
  }
  return out;
}

const LogTables* Field::log_tables() const {
  if (degree_ > kMaxLogTableDegree) return nullptr;
  std::call_once(shared_->log_once, [this] {
    auto t = std::make_unique<LogTables>();
    const std::uint64_t order = mask_;
    const auto factors = prime_factors(order);
    FieldElement g{1};
    for (std::uint64_t cand = (order == 1 ? 1 : 2); cand <= mask_; ++cand) {
      const FieldElement c{cand};
      const bool primitive = std::all_of(factors.begin(), factors.end(),
                                         [&](std::uint64_t p) { return pow_u64(c, order / p).bits != 1; });
      if (primitive) {
        g = c;
        break;
      }
    }
    t->generator = g;
    t->order = order;
    t->log.assign(static_cast<std::size_t>(mask_) + 1, 0);
    t->antilog.resize(static_cast<std::size_t>(order));
    FieldElement x{1};
    for (std::uint64_t j = 0; j < order; ++j) {
      t->antilog[j] = static_cast<std::uint32_t>(x.bits);
      t->log[x.bits] = static_cast<std::uint32_t>(j);
      x = mul(x, g);
    }
    shared_->logs = std::move(t);
  });
  return shared_->logs.get();
}

}  // namespace apnforge
