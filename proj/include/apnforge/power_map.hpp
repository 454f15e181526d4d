#pragma once

#include <cstdint>

#include "apnforge/field.hpp"

namespace apnforge {

// Evaluates x -> x^d for a fixed, already reduced exponent d (0 <= d <= 2^n-1).
// Uses log/antilog tables when the field provides them, otherwise
// square-and-multiply. Both paths agree bit for bit.
class PowerMap {
 public:
  enum class Strategy { Auto, Direct };

  PowerMap(const Field& field, std::uint64_t d, Strategy strategy = Strategy::Auto)
      : field_(&field), d_(d), tables_(strategy == Strategy::Auto ? field.log_tables() : nullptr) {
    if (tables_ != nullptr) d_mod_order_ = tables_->order == 0 ? 0 : d % tables_->order;
  }

  FieldElement operator()(FieldElement x) const {
    if (d_ == 0) return {1};
    if (x.bits == 0) return {0};
    if (tables_ != nullptr) {
      const std::uint64_t j = (std::uint64_t{tables_->log[x.bits]} * d_mod_order_) % tables_->order;
      return {tables_->antilog[j]};
    }
    return field_->pow_u64(x, d_);
  }

  std::uint64_t exponent() const { return d_; }
  bool uses_tables() const { return tables_ != nullptr; }

 private:
  const Field* field_;
  std::uint64_t d_;
  const LogTables* tables_;
  std::uint64_t d_mod_order_ = 0;
};

}  // namespace apnforge
