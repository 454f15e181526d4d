#pragma once

#include <cstdint>
#include <map>

#include "apnforge/bignat.hpp"
#include "apnforge/field.hpp"
#include "apnforge/parallel.hpp"

namespace apnforge {

// Distribution of #{x : (x+1)^d + x^d = b} over every output b.
struct DiffSpectrum {
  int n = 0;
  BigNat d;                                          // reduced exponent
  std::map<std::uint64_t, std::uint64_t> histogram;  // solution count -> number of b
  std::uint64_t uniformity = 0;                      // largest solution count
};

// Single pass over x tallying the derivative in direction 1. For a power map
// the substitution x -> a*y turns the a-derivative into the 1-derivative, so
// this determines the differential uniformity.
DiffSpectrum diff_spectrum_monomial(const BigNat& d, const Field& field, const ScanOptions& options = {});

bool is_apn(const BigNat& d, const Field& field, const ScanOptions& options = {});

// max over a != 0 and b of #{x : F(x+a) + F(x) = b}, by a direct double loop.
// n <= 12.
std::uint64_t full_uniformity_oracle(const BigNat& d, const Field& field);

}  // namespace apnforge
