#include "tsirelson/scalar.hpp"

#include <charconv>
#include <cctype>
#include <cmath>

#include "tsirelson/errors.hpp"

namespace tsirelson {

namespace {

[[noreturn]] void bad_scalar(std::string_view text) {
  throw ParseError("malformed number '" + std::string(text) + "'");
}

double parse_double_token(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) bad_scalar(text);
  return v;
}

// Exact value of a decimal literal: [sign] digits [. digits] [e [sign] digits].
Rational parse_decimal_exact(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  std::size_t fraction_digits = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) bad_scalar(text);
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string_view rest = text.substr(i);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) bad_scalar(text);
    i = text.size();
  }
  if (i != text.size()) bad_scalar(text);
  exponent -= static_cast<long>(fraction_digits);
  if (exponent > 400 || exponent < -400) bad_scalar(text);
  const auto first = digits.find_first_not_of('0');
  boost::multiprecision::mpz_int value(first == std::string::npos ? std::string("0") : digits.substr(first));
  boost::multiprecision::mpz_int scale = boost::multiprecision::pow(boost::multiprecision::mpz_int(10),
                                                                    static_cast<unsigned>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(value * scale) : Rational(value, scale);
  return negative ? Rational(-r) : r;
}

}  // namespace

template <>
double parse_scalar<double>(std::string_view text) {
  if (text.empty()) bad_scalar(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_double_token(text.substr(0, slash));
    const double den = parse_double_token(text.substr(slash + 1));
    if (den == 0) bad_scalar(text);
    return num / den;
  }
  return parse_double_token(text);
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  if (text.empty()) bad_scalar(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal_exact(text.substr(0, slash));
    const Rational den = parse_decimal_exact(text.substr(slash + 1));
    if (den == 0) bad_scalar(text);
    return num / den;
  }
  return parse_decimal_exact(text);
}

template <>
std::string format_scalar<double>(const double& v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <>
std::string format_scalar<Rational>(const Rational& v) {
  const auto num = boost::multiprecision::numerator(v);
  const auto den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace tsirelson
