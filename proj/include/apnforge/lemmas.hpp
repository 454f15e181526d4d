#pragma once

#include <vector>

#include "apnforge/families.hpp"

namespace apnforge {

// Direct congruence and weight checks of the exponent lemmas:
//   wt(e(l,k) mod 2^n-1) = l for gcd(k,n) = 1, l < n            (n <= 40)
//   the gcd(n,2t) = 2 weight identities and e(3n/2+m,2t) = e(m,2t) (n <= 40)
//   parameter reflection e(l,m-k) ~ e(l,m+k) via reflect_k         (n <= 30)
//   (2^r+1) e((n+1)/2, 2r) = power of 2, odd n, gcd(r,n) = 1       (n <= 31)
//   compress(exp_set(r)) sums back to r                            (n <= 12)
// Each returns one ClaimCheck; `observed` carries the counts or the first
// counterexample.
ClaimCheck check_weight_observation(int n_max = 40);
ClaimCheck check_gcd2_weights(int n_max = 40);
ClaimCheck check_reflection(int n_max = 30);
ClaimCheck check_gold_inverse(int n_max = 31);
ClaimCheck check_compression_sums(int n_max = 12);

std::vector<ClaimCheck> verify_lemmas();

}  // namespace apnforge
