#include "apnforge/apn.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <string>
#include <vector>

#include "apnforge/errors.hpp"
#include "apnforge/exponent.hpp"
#include "apnforge/power_map.hpp"
#include "apnforge/zero_apn.hpp"

namespace apnforge {

DiffSpectrum diff_spectrum_monomial(const BigNat& d, const Field& field, const ScanOptions& options) {
  const int n = field.degree();
  if (n > options.scan_cap) {
    throw ScanCapExceeded("n=" + std::to_string(n) + " is above the scan cap " + std::to_string(options.scan_cap));
  }
  const std::uint64_t reduced = reduce_mod_mersenne_u64(d, n);
  const PowerMap power(field, reduced);

  // The derivative takes the same value at x and x+1, so walk even x and store
  // half-counts: every full count is even.
  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t pairs = size >> 1;
  std::vector<std::uint32_t> half(size, 0);
  const bool shared = options.workers > 1;
  const std::size_t tasks = std::min<std::uint64_t>(pairs == 0 ? 1 : pairs, std::max(1u, options.workers) * 8ull);
  parallel_for(tasks, options.workers, [&](std::size_t t) {
    const std::uint64_t lo = pairs * t / tasks;
    const std::uint64_t hi = pairs * (t + 1) / tasks;
    for (std::uint64_t p = lo; p < hi; ++p) {
      if ((p & 0xffff) == 0) options.check_deadline();
      const FieldElement x{p << 1};
      const std::uint64_t b = (power(x) + power(FieldElement{x.bits | 1})).bits;
      if (shared) {
        std::atomic_ref<std::uint32_t>(half[b]).fetch_add(1, std::memory_order_relaxed);
      } else {
        ++half[b];
      }
    }
  });

  DiffSpectrum s;
  s.n = n;
  s.d = from_u64(reduced);
  std::array<std::uint64_t, 64> small{};
  for (std::uint32_t h : half) {
    if (h < small.size()) ++small[h];
    else ++s.histogram[std::uint64_t{h} * 2];
  }
  for (std::size_t h = 0; h < small.size(); ++h) {
    if (small[h] != 0) s.histogram[h * 2] = small[h];
  }
  s.uniformity = s.histogram.rbegin()->first;
  return s;
}

bool is_apn(const BigNat& d, const Field& field, const ScanOptions& options) {
  return diff_spectrum_monomial(d, field, options).uniformity == 2;
}

std::uint64_t full_uniformity_oracle(const BigNat& d, const Field& field) {
  const int n = field.degree();
  if (n > kMaxQuadraticDegree) {
    throw ScanCapExceeded("full differential oracle is limited to n <= " + std::to_string(kMaxQuadraticDegree));
  }
  const PowerMap power(field, reduce_mod_mersenne_u64(d, n), PowerMap::Strategy::Direct);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> f(size);
  for (std::uint64_t x = 0; x < size; ++x) f[x] = power(FieldElement{x}).bits;
  std::vector<std::uint32_t> count(size);
  std::uint64_t best = 0;
  for (std::uint64_t a = 1; a < size; ++a) {
    std::fill(count.begin(), count.end(), 0);
    for (std::uint64_t x = 0; x < size; ++x) {
      const std::uint64_t c = ++count[f[x ^ a] ^ f[x]];
      best = std::max(best, c);
    }
  }
  return best;
}

}  // namespace apnforge
