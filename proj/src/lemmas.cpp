#include "apnforge/lemmas.hpp"

#include <numeric>
#include <string>

#include "apnforge/exponent.hpp"

namespace apnforge {

namespace {

ClaimCheck finish(std::string claim, long checked, const std::string& first_failure) {
  ClaimCheck c;
  c.claim = std::move(claim);
  c.holds = first_failure.empty() && checked > 0;
  c.observed = first_failure.empty() ? std::to_string(checked) + " cases checked" : "counterexample " + first_failure;
  return c;
}

std::string at(std::initializer_list<std::pair<const char*, long>> vals) {
  std::string s;
  for (const auto& [name, v] : vals) s += (s.empty() ? "" : " ") + std::string(name) + "=" + std::to_string(v);
  return s;
}

bool is_power_of_two(const BigNat& v) { return v > 0 && mpz_popcount(v.get_mpz_t()) == 1; }

}  // namespace

ClaimCheck check_weight_observation(int n_max) {
  long checked = 0;
  std::string fail;
  for (int n = 2; n <= n_max && fail.empty(); ++n) {
    for (unsigned long k = 1; k < static_cast<unsigned long>(n); ++k) {
      if (std::gcd(k, static_cast<unsigned long>(n)) != 1) continue;
      for (unsigned long l = 1; l < static_cast<unsigned long>(n); ++l) {
        ++checked;
        if (weight(reduce_mod_mersenne(e_lk(l, k), n)) != static_cast<int>(l)) {
          fail = at({{"n", n}, {"l", static_cast<long>(l)}, {"k", static_cast<long>(k)}});
          break;
        }
      }
    }
  }
  return finish("wt(e(l,k) mod 2^n-1) = l for gcd(k,n)=1, l<n, n<=" + std::to_string(n_max), checked, fail);
}

ClaimCheck check_gcd2_weights(int n_max) {
  long checked = 0;
  std::string fail;
  for (int n = 4; n <= n_max && fail.empty(); n += 2) {
    const unsigned long un = static_cast<unsigned long>(n);
    const unsigned long half = un / 2;
    for (unsigned long t = 1; t < un && fail.empty(); ++t) {
      if (std::gcd(un, 2 * t) != 2) continue;
      for (unsigned long m = 1; m < half; ++m) {
        ++checked;
        const auto w = [&](unsigned long l) { return static_cast<unsigned long>(weight(reduce_mod_mersenne(e_lk(l, 2 * t), n))); };
        const bool ok = w(m) == m && w(half + m) == half && w(un + m) == half + m &&
                        reduce_mod_mersenne(e_lk(3 * half + m, 2 * t), n) == reduce_mod_mersenne(e_lk(m, 2 * t), n);
        if (!ok) {
          fail = at({{"n", n}, {"t", static_cast<long>(t)}, {"m", static_cast<long>(m)}});
          break;
        }
      }
    }
  }
  return finish("gcd(n,2t)=2 weight identities and e(3n/2+m,2t) = e(m,2t), even n<=" + std::to_string(n_max), checked,
                fail);
}

ClaimCheck check_reflection(int n_max) {
  long checked = 0;
  std::string fail;
  for (int n = 3; n <= n_max && fail.empty(); ++n) {
    for (unsigned long k = 1; k < static_cast<unsigned long>(n / 2) && fail.empty(); ++k) {
      for (unsigned long l = 1; l < static_cast<unsigned long>(n); ++l) {
        ++checked;
        if (!reflection_holds(reflect_k(l, k, n), n)) {
          fail = at({{"n", n}, {"l", static_cast<long>(l)}, {"k", static_cast<long>(k)}});
          break;
        }
      }
    }
  }
  return finish("reflection 2^X e(l,low) = e(l,high), n<=" + std::to_string(n_max), checked, fail);
}

ClaimCheck check_gold_inverse(int n_max) {
  long checked = 0;
  std::string fail;
  for (int n = 3; n <= n_max && fail.empty(); n += 2) {
    const unsigned long un = static_cast<unsigned long>(n);
    const BigNat m = mersenne(un);
    for (unsigned long r = 1; r < un; ++r) {
      if (std::gcd(r, un) != 1) continue;
      ++checked;
      const BigNat prod = (pow2(r) + 1) * e_lk((un + 1) / 2, 2 * r) % m;
      if (!is_power_of_two(prod)) {
        fail = at({{"n", n}, {"r", static_cast<long>(r)}});
        break;
      }
    }
  }
  return finish("(2^r+1) e((n+1)/2, 2r) is a power of 2 mod 2^n-1, odd n<=" + std::to_string(n_max), checked, fail);
}

ClaimCheck check_compression_sums(int n_max) {
  long checked = 0;
  std::string fail;
  for (int n = 1; n <= n_max && fail.empty(); ++n) {
    const unsigned long top = (1ul << n) - 1;
    for (unsigned long v = 0; v <= top; ++v) {
      ++checked;
      const ReducedExponent r = reduce_mod_mersenne(BigNat(v), n);
      const ExpSet s = compress(exp_set(r));
      if (!s.is_set() || exp_set_value(s) != r) {
        fail = at({{"n", n}, {"r", static_cast<long>(v)}});
        break;
      }
    }
  }
  return finish("compress(exp_set(r)) represents r, n<=" + std::to_string(n_max), checked, fail);
}

std::vector<ClaimCheck> verify_lemmas() {
  return {check_weight_observation(), check_gcd2_weights(), check_reflection(), check_gold_inverse(),
          check_compression_sums()};
}

}  // namespace apnforge
