#include "tsirelson/ordinal.hpp"

#include "tsirelson/errors.hpp"

namespace tsirelson {

OrdinalRank::OrdinalRank(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coefficient == 0) throw InvalidArgument("ordinal: coefficients must be positive");
    if (i > 0 && terms_[i - 1].exponent <= terms_[i].exponent) {
      throw InvalidArgument("ordinal: exponents must strictly decrease");
    }
  }
}

OrdinalRank OrdinalRank::finite(std::uint64_t n) {
  if (n == 0) return {};
  return OrdinalRank({{0, n}});
}

OrdinalRank OrdinalRank::omega() { return OrdinalRank({{1, 1}}); }

bool OrdinalRank::is_finite() const noexcept { return terms_.empty() || terms_.front().exponent == 0; }

std::uint64_t OrdinalRank::finite_value() const {
  if (!is_finite()) throw InvalidArgument("ordinal " + to_string(*this) + " is infinite");
  return terms_.empty() ? 0 : terms_.front().coefficient;
}

OrdinalRank OrdinalRank::successor() const { return *this + finite(1); }

std::strong_ordering operator<=>(const OrdinalRank& a, const OrdinalRank& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
    if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

OrdinalRank operator+(const OrdinalRank& a, const OrdinalRank& b) {
  if (b.terms_.empty()) return a;
  const auto lead = b.terms_.front().exponent;
  // Terms of a below the leading exponent of b are absorbed.
  std::vector<OrdinalRank::Term> out;
  for (const auto& t : a.terms_) {
    if (t.exponent > lead) out.push_back(t);
    else if (t.exponent == lead) {
      out.push_back({lead, t.coefficient + b.terms_.front().coefficient});
      out.insert(out.end(), b.terms_.begin() + 1, b.terms_.end());
      return OrdinalRank(std::move(out));
    } else {
      break;
    }
  }
  out.insert(out.end(), b.terms_.begin(), b.terms_.end());
  return OrdinalRank(std::move(out));
}

std::string to_string(const OrdinalRank& rank) {
  if (rank.is_zero()) return "0";
  std::string out;
  for (const auto& t : rank.terms()) {
    if (!out.empty()) out += '+';
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "ω";
    if (t.exponent > 1) out += "^" + std::to_string(t.exponent);
    if (t.coefficient > 1) out += "·" + std::to_string(t.coefficient);
  }
  return out;
}

}  // namespace tsirelson
