#include "tsirelson/theta.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "tsirelson/errors.hpp"

namespace tsirelson {

ThetaSpec ThetaSpec::rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0 || numerator <= 0 || numerator >= denominator) {
    throw InvalidArgument("theta = " + std::to_string(numerator) + "/" + std::to_string(denominator) +
                          " is not strictly between 0 and 1");
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  return ThetaSpec(RationalForm{numerator / g, denominator / g});
}

ThetaSpec ThetaSpec::root(std::uint32_t n, double q) {
  if (n < 2) throw InvalidArgument("root-form theta needs n >= 2");
  if (!(q > 1) || !std::isfinite(q)) throw InvalidArgument("root-form theta needs q > 1");
  return ThetaSpec(RootForm{n, q});
}

double ThetaSpec::value() const {
  if (const auto* r = std::get_if<RationalForm>(&form_)) {
    return static_cast<double>(r->numerator) / static_cast<double>(r->denominator);
  }
  const auto& root = std::get<RootForm>(form_);
  return std::pow(static_cast<double>(root.n), -1.0 / root.q);
}

Rational ThetaSpec::exact() const {
  if (const auto* r = std::get_if<RationalForm>(&form_)) return Rational(r->numerator, r->denominator);
  throw InvalidArgument("theta " + format_theta(*this) + " is irrational; exact arithmetic needs a rational theta");
}

ThetaSpec parse_theta(std::string_view literal) {
  auto fail = [&](const std::string& why) -> ThetaSpec {
    throw ParseError("theta literal '" + std::string(literal) + "': " + why);
  };
  try {
    if (literal.starts_with("root:")) {
      std::string_view body = literal.substr(5);
      std::optional<std::uint32_t> n;
      std::optional<double> q;
      while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = body.substr(0, comma);
        body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) return fail("expected key=value");
        const std::string_view key = item.substr(0, eq);
        const std::string_view value = item.substr(eq + 1);
        if (key == "n") {
          std::uint32_t v = 0;
          auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
          if (ec != std::errc() || ptr != value.data() + value.size()) return fail("bad n");
          n = v;
        } else if (key == "q") {
          q = parse_scalar<double>(value);
        } else {
          return fail("unknown key '" + std::string(key) + "'");
        }
      }
      if (!n || !q) return fail("root form needs n and q");
      return ThetaSpec::root(*n, *q);
    }
    const Rational r = parse_scalar<Rational>(literal);
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    const boost::multiprecision::mpz_int limit(std::numeric_limits<std::int64_t>::max());
    if (boost::multiprecision::abs(num) > limit || den > limit) return fail("fraction too large");
    return ThetaSpec::rational(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
  } catch (const InvalidArgument& e) {
    return fail(e.what());
  }
}

std::string format_theta(const ThetaSpec& theta) {
  if (const auto* r = std::get_if<ThetaSpec::RationalForm>(&theta.form())) {
    return std::to_string(r->numerator) + "/" + std::to_string(r->denominator);
  }
  const auto& root = std::get<ThetaSpec::RootForm>(theta.form());
  return "root:n=" + std::to_string(root.n) + ",q=" + format_scalar<double>(root.q);
}

}  // namespace tsirelson
