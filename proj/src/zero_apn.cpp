#include "apnforge/zero_apn.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "apnforge/errors.hpp"
#include "apnforge/exponent.hpp"
#include "apnforge/power_map.hpp"

namespace apnforge {

std::string_view to_string(ZeroApnMethod m) {
  switch (m) {
    case ZeroApnMethod::GcdSufficient: return "gcd-sufficient";
    case ZeroApnMethod::CascadeSufficient: return "cascade-sufficient";
    case ZeroApnMethod::ExactBruteForce: return "exact-brute-force";
  }
  return "?";
}

std::string_view to_string(ImageKind k) {
  switch (k) {
    case ImageKind::Permutation: return "permutation";
    case ImageKind::ThreeToOne: return "three-to-one";
    case ImageKind::Other: return "other";
  }
  return "?";
}

namespace {

void check_lkn(unsigned long l, unsigned long k, unsigned long n) {
  if (l < 2 || k < 1 || n < 1) {
    throw DomainError("sufficiency conditions need l >= 2, k >= 1, n >= 1 (got l=" + std::to_string(l) +
                      ", k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
}

void check_cap(int n, int cap) {
  if (n > cap) {
    throw ScanCapExceeded("n=" + std::to_string(n) + " is above the scan cap " + std::to_string(cap));
  }
}

}  // namespace

bool thm_sufficient(unsigned long l, unsigned long k, unsigned long n) {
  check_lkn(l, k, n);
  if (std::gcd(k * l, n) != 1) return false;
  // gcd(e(l-1,k), 2^n-1) = 2^{gcd(l-1,n)} - 1, which is 1 iff gcd(l-1,n) = 1.
  return std::gcd(l - 1, n) == 1;
}

bool thm_sufficient_bignat(unsigned long l, unsigned long k, unsigned long n) {
  check_lkn(l, k, n);
  if (std::gcd(k * l, n) != 1) return false;
  return gcd(e_lk(l - 1, k), mersenne(n)) == 1;
}

bool cascade_sufficient(unsigned long l, unsigned long k, unsigned long n) {
  check_lkn(l, k, n);
  for (unsigned long j = 2; j <= l; ++j) {
    if (std::gcd(j * k, n) != 1) return false;
  }
  return true;
}

bool thm_relaxed_sufficient(unsigned long l, unsigned long k, unsigned long n) {
  check_lkn(l, k, n);
  const unsigned long g = std::gcd(k * l, n);
  if (g > 2) return false;
  if (gcd(e_lk(l - 1, k), mersenne(n)) != 1) return false;
  if (g == 2) return e_lk(l, k) % 3 == 0;
  return true;
}

std::vector<unsigned long> generate_dims(unsigned long l, unsigned long k, unsigned long n_lo, unsigned long n_hi,
                                         DimCondition condition, const ScanOptions& options) {
  if (n_lo > n_hi) throw DomainError("empty dimension range");
  std::vector<unsigned long> out;
  BigNat d;
  if (condition == DimCondition::Exact) d = e_lk(l, k);
  for (unsigned long n = std::max(n_lo, 1ul); n <= n_hi; ++n) {
    bool keep = false;
    switch (condition) {
      case DimCondition::Theorem: keep = thm_sufficient(l, k, n); break;
      case DimCondition::Cascade: keep = cascade_sufficient(l, k, n); break;
      case DimCondition::TheoremRelaxed: keep = thm_relaxed_sufficient(l, k, n); break;
      case DimCondition::Exact:
        check_cap(static_cast<int>(std::min<unsigned long>(n, 1ul << 20)), options.scan_cap);
        keep = is_zero_apn_exact(d, Field::create(static_cast<int>(n)), options).is_zero_apn;
        break;
    }
    if (keep) out.push_back(n);
  }
  return out;
}

ZeroApnVerdict is_zero_apn_exact(const BigNat& d, const Field& field, const ScanOptions& options) {
  const int n = field.degree();
  check_cap(n, options.scan_cap);
  const std::uint64_t reduced = reduce_mod_mersenne_u64(d, n);
  const PowerMap power(field, reduced);

  // x^d + (x+1)^d is invariant under x -> x+1, so test even x only and count
  // each root pair twice.
  const std::uint64_t pairs = std::uint64_t{1} << (n - 1);
  const std::size_t tasks = std::min<std::uint64_t>(pairs, std::max(1u, options.workers) * 8ull);
  std::vector<std::uint64_t> roots(tasks, 0);
  parallel_for(tasks, options.workers, [&](std::size_t t) {
    const std::uint64_t lo = pairs * t / tasks;
    const std::uint64_t hi = pairs * (t + 1) / tasks;
    std::uint64_t count = 0;
    for (std::uint64_t p = lo; p < hi; ++p) {
      if ((p & 0xffff) == 0) options.check_deadline();
      const FieldElement x{p << 1};
      if (x.bits < 2) continue;  // the trivial pair {0, 1}
      const FieldElement x1{x.bits | 1};
      if ((power(x) + power(x1)).bits == 1) count += 2;
    }
    roots[t] = count;
  });

  ZeroApnVerdict v;
  v.exponent = from_u64(reduced);
  v.n = n;
  v.nontrivial_root_count = std::accumulate(roots.begin(), roots.end(), std::uint64_t{0});
  v.is_zero_apn = v.nontrivial_root_count == 0;
  v.method = ZeroApnMethod::ExactBruteForce;
  return v;
}

bool is_x0_apn_exact(const BigNat& d, FieldElement x0, const Field& field) {
  const int n = field.degree();
  if (n > kMaxQuadraticDegree) {
    throw ScanCapExceeded("x0-APN brute force is limited to n <= " + std::to_string(kMaxQuadraticDegree));
  }
  if (!field.contains(x0)) throw DomainError("x0 is not an element of the field");
  const PowerMap power(field, reduce_mod_mersenne_u64(d, n), PowerMap::Strategy::Direct);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> f(size);
  for (std::uint64_t x = 0; x < size; ++x) f[x] = power(FieldElement{x}).bits;
  const std::uint64_t a = x0.bits;
  for (std::uint64_t y = 0; y < size; ++y) {
    for (std::uint64_t z = 0; z < size; ++z) {
      if ((f[a] ^ f[y] ^ f[z] ^ f[a ^ y ^ z]) != 0) continue;
      if ((a ^ y) != 0 && (a ^ z) != 0 && (y ^ z) != 0) return false;
    }
  }
  return true;
}

ViolationProfile characterize_violations(unsigned long l, unsigned long k, int probe_cap) {
  check_lkn(l, k, 1);
  ViolationProfile profile;
  profile.l = l;
  profile.k = k;
  for (unsigned long j = 2; j <= l; ++j) {
    const unsigned long jk = j * k;
    for (unsigned long m = 2; m <= jk; ++m) {
      if (jk % m == 0) profile.candidate_degrees.push_back(static_cast<int>(m));
    }
  }
  std::sort(profile.candidate_degrees.begin(), profile.candidate_degrees.end());
  profile.candidate_degrees.erase(std::unique(profile.candidate_degrees.begin(), profile.candidate_degrees.end()),
                                  profile.candidate_degrees.end());
  if (!profile.candidate_degrees.empty() && profile.candidate_degrees.back() > probe_cap) {
    throw ScanCapExceeded("candidate subfield degree " + std::to_string(profile.candidate_degrees.back()) +
                          " exceeds probe cap " + std::to_string(probe_cap));
  }
  const BigNat d = e_lk(l, k);
  ScanOptions options;
  options.scan_cap = probe_cap;
  for (int m : profile.candidate_degrees) {
    const bool below = std::any_of(profile.violating_degrees.begin(), profile.violating_degrees.end(),
                                   [m](int v) { return m % v == 0; });
    if (below) continue;
    if (!is_zero_apn_exact(d, Field::create(m), options).is_zero_apn) profile.violating_degrees.push_back(m);
  }
  return profile;
}

bool predicts_zero_apn(const ViolationProfile& profile, unsigned long n) {
  return std::none_of(profile.violating_degrees.begin(), profile.violating_degrees.end(),
                      [n](int m) { return n % static_cast<unsigned long>(m) == 0; });
}

ImageClass image_class(unsigned long l, unsigned long k, unsigned long n) {
  if (l < 1 || k < 1 || n < 1) throw DomainError("image_class needs l, k, n >= 1");
  if (std::gcd(k, n) != 1) {
    throw DomainError("image_class needs gcd(k, n) = 1 (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  const unsigned long g = std::gcd(l, n);
  ImageClass c{mersenne(g), ImageKind::Other};
  if (g == 1) c.kind = ImageKind::Permutation;
  else if (g == 2) c.kind = ImageKind::ThreeToOne;
  return c;
}

}  // namespace apnforge
