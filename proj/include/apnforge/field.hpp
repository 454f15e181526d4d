#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

#include "apnforge/bignat.hpp"

namespace apnforge {

using u128 = unsigned __int128;

inline constexpr int kMaxFieldDegree = 64;
// Log/antilog tables are built on demand only up to this degree (2 x 16 MiB at 22).
inline constexpr int kMaxLogTableDegree = 22;

// An element of GF(2^n) in the polynomial basis: bit i is the coefficient of x^i.
struct FieldElement {
  std::uint64_t bits = 0;

  friend constexpr FieldElement operator+(FieldElement a, FieldElement b) { return {a.bits ^ b.bits}; }
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

// Carryless (GF(2)[x]) product of two 64-bit polynomials.
u128 clmul_portable(std::uint64_t a, std::uint64_t b);
// Same contract; uses PCLMULQDQ when the build enables it.
u128 clmul(std::uint64_t a, std::uint64_t b);
bool clmul_is_hardware();

// Irreducibility over F_2 of x^degree + tail, where tail holds the coefficients
// below x^degree (bit 0 = constant term).
bool is_irreducible(int degree, std::uint64_t tail);

// The first `count` irreducible polynomials of the given degree with constant
// term 1, in increasing integer order, returned as tails.
std::vector<std::uint64_t> irreducible_tails(int degree, std::size_t count);

// Inclusive range of elements in integer order of their bit pattern. The
// inclusive upper end lets n = 64 be represented.
class ElementRange {
 public:
  class iterator {
   public:
    using value_type = FieldElement;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(std::uint64_t v, std::uint64_t last, bool done) : v_(v), last_(last), done_(done) {}
    FieldElement operator*() const { return {v_}; }
    iterator& operator++() {
      if (v_ == last_) done_ = true; else ++v_;
      return *this;
    }
    iterator operator++(int) { auto t = *this; ++*this; return t; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_ && (a.done_ || a.v_ == b.v_);
    }

   private:
    std::uint64_t v_ = 0, last_ = 0;
    bool done_ = true;
  };

  ElementRange(std::uint64_t first, std::uint64_t last) : first_(first), last_(last) {}
  std::uint64_t first() const { return first_; }
  std::uint64_t last() const { return last_; }
  // Number of elements; 2^64 for a full 64-bit range.
  u128 size() const { return u128(last_ - first_) + 1; }
  iterator begin() const { return {first_, last_, false}; }
  iterator end() const { return {}; }

 private:
  std::uint64_t first_, last_;
};

// Discrete log / antilog tables relative to a fixed primitive element.
struct LogTables {
  FieldElement generator;
  std::uint64_t order = 0;            // 2^n - 1
  std::vector<std::uint32_t> log;     // log[0] is unused
  std::vector<std::uint32_t> antilog; // antilog[j] = generator^j, size order
};

// GF(2^n) = F_2[x]/(f). Immutable after construction; copies share state and
// may be used concurrently.
class Field {
 public:
  // Modulus = the smallest irreducible degree-n polynomial (as an integer).
  static Field create(int degree);
  // Explicit modulus x^degree + tail; throws DomainError if not irreducible.
  static Field with_modulus(int degree, std::uint64_t tail);

  int degree() const { return degree_; }
  std::uint64_t modulus_tail() const { return tail_; }
  BigNat modulus() const;
  BigNat group_order() const { return mersenne(degree_); }
  // 2^n - 1 as a machine word.
  std::uint64_t order() const { return mask_; }
  std::uint64_t mask() const { return mask_; }

  // Validating constructor for elements; throws DomainError on stray high bits.
  FieldElement element(std::uint64_t bits) const;
  bool contains(FieldElement a) const { return (a.bits & ~mask_) == 0; }

  FieldElement mul(FieldElement a, FieldElement b) const { return {reduce(clmul(a.bits, b.bits))}; }
  FieldElement square(FieldElement a) const { return mul(a, a); }
  // a^e with e reduced to its canonical residue mod 2^n - 1 first.
  // pow(a, 0) = 1 for every a, including 0.
  FieldElement pow(FieldElement a, const BigNat& e) const;
  // Square-and-multiply on a machine-word exponent, no reduction.
  FieldElement pow_u64(FieldElement a, std::uint64_t e) const;
  // Throws DivisionByZero for a = 0.
  FieldElement inv(FieldElement a) const;

  ElementRange elements() const { return {0, mask_}; }
  // Contiguous, ordered, non-empty partition of elements() into at most `parts`
  // pieces.
  std::vector<ElementRange> chunks(std::size_t parts) const;

  // Built on first use, nullptr above kMaxLogTableDegree. Thread-safe.
  const LogTables* log_tables() const;

  // Reduces a carryless product of two reduced elements.
  std::uint64_t reduce(u128 product) const;

 private:
  struct Shared;
  Field(int degree, std::uint64_t tail);

  int degree_;
  std::uint64_t tail_;
  std::uint64_t mask_;
  int reduce_bytes_;
  std::shared_ptr<Shared> shared_;
};

}  // namespace apnforge
