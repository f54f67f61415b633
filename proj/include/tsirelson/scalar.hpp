#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <string>
#include <string_view>

namespace tsirelson {

using Rational = boost::multiprecision::mpq_rational;

/// Coefficient types the engine is instantiated for.
template <typename S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Rational>;

template <Scalar S>
S abs_value(const S& v) {
  if constexpr (std::same_as<S, double>) {
    return v < 0 ? -v : v;
  } else {
    return boost::multiprecision::abs(v);
  }
}

template <Scalar S>
double to_double(const S& v) {
  if constexpr (std::same_as<S, double>) {
    return v;
  } else {
    return v.template convert_to<double>();
  }
}

/// Parses "-2", "0.125", "3/4" (and exponents for double). Decimal text is
/// converted exactly for Rational.
template <Scalar S>
S parse_scalar(std::string_view text);

/// Shortest round-trip text for double, "p/q" (or "p") for Rational.
template <Scalar S>
std::string format_scalar(const S& v);

}  // namespace tsirelson
