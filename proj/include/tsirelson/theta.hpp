#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "tsirelson/scalar.hpp"

namespace tsirelson {

/// The scaling constant 0 < theta < 1, either an exact fraction or n^{-1/q}.
class ThetaSpec {
 public:
  struct RationalForm {
    std::int64_t numerator;
    std::int64_t denominator;
  };
  struct RootForm {
    std::uint32_t n;
    double q;
  };

  /// Throws InvalidArgument unless 0 < num/den < 1.
  static ThetaSpec rational(std::int64_t numerator, std::int64_t denominator);
  /// theta = n^{-1/q}; throws InvalidArgument unless n >= 2 and q > 1.
  static ThetaSpec root(std::uint32_t n, double q);

  bool is_rational() const noexcept { return std::holds_alternative<RationalForm>(form_); }
  const std::variant<RationalForm, RootForm>& form() const noexcept { return form_; }

  double value() const;
  /// Throws InvalidArgument for RootForm.
  Rational exact() const;

  template <Scalar S>
  S as() const {
    if constexpr (std::same_as<S, double>) {
      return value();
    } else {
      return exact();
    }
  }

 private:
  explicit ThetaSpec(std::variant<RationalForm, RootForm> form) : form_(form) {}
  std::variant<RationalForm, RootForm> form_;
};

/// "1/2", "0.75", "root:n=2,q=2".
ThetaSpec parse_theta(std::string_view literal);
std::string format_theta(const ThetaSpec& theta);

}  // namespace tsirelson
