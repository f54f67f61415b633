#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tsirelson {

/// An ordinal below omega^omega in Cantor normal form:
/// omega^{e_1}*c_1 + ... + omega^{e_k}*c_k with e_1 > ... > e_k and c_i > 0.
class OrdinalRank {
 public:
  struct Term {
    std::uint32_t exponent;
    std::uint64_t coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  OrdinalRank() = default;  // zero
  /// Throws InvalidArgument unless exponents strictly decrease and coefficients are positive.
  explicit OrdinalRank(std::vector<Term> terms);

  static OrdinalRank finite(std::uint64_t n);
  static OrdinalRank omega();

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_finite() const noexcept;
  /// The natural-number value; throws InvalidArgument for infinite ordinals.
  std::uint64_t finite_value() const;

  OrdinalRank successor() const;

  friend std::strong_ordering operator<=>(const OrdinalRank& a, const OrdinalRank& b);
  friend bool operator==(const OrdinalRank& a, const OrdinalRank& b) = default;

  /// Ordinal (non-commutative) addition.
  friend OrdinalRank operator+(const OrdinalRank& a, const OrdinalRank& b);

 private:
  std::vector<Term> terms_;
};

/// e.g. "0", "7", "ω", "ω^2·3+ω+1".
std::string to_string(const OrdinalRank& rank);

}  // namespace tsirelson
