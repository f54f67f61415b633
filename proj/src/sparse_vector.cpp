#include "tsirelson/sparse_vector.hpp"

#include <charconv>

#include <json.hpp>

namespace tsirelson {

template <Scalar S>
SparseVector<S>::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first == 0) throw InvalidArgument("vector positions start at 1");
    if (i > 0 && entries[i - 1].first == entries[i].first) {
      throw InvalidArgument("position " + std::to_string(entries[i].first) + " given twice");
    }
  }
  for (auto& e : entries) {
    if (e.second != 0) entries_.push_back(std::move(e));
  }
}

template <Scalar S>
SparseVector<S>::SparseVector(const std::map<Index, S>& entries) {
  for (const auto& [k, v] : entries) {
    if (k == 0) throw InvalidArgument("vector positions start at 1");
    if (v != 0) entries_.emplace_back(k, v);
  }
}

template <Scalar S>
SparseVector<S> SparseVector<S>::unit(Index k) {
  return SparseVector(std::vector<Entry>{Entry(k, S(1))});
}

template <Scalar S>
SparseVector<S> SparseVector<S>::ones(Index first, Index last) {
  std::vector<Entry> entries;
  for (Index k = first; k <= last; ++k) entries.emplace_back(k, S(1));
  return SparseVector(std::move(entries));
}

template <Scalar S>
FiniteSet SparseVector<S>::support() const {
  std::vector<Index> positions;
  positions.reserve(entries_.size());
  for (const auto& e : entries_) positions.push_back(e.first);
  return FiniteSet(std::move(positions));
}

template <Scalar S>
S SparseVector<S>::operator[](Index k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const Entry& e, Index key) { return e.first < key; });
  return it != entries_.end() && it->first == k ? it->second : S(0);
}

template <Scalar S>
SparseVector<S> SparseVector<S>::restrict_to(const FiniteSet& set) const {
  SparseVector out;
  for (const auto& e : entries_) {
    if (set.contains(e.first)) out.entries_.push_back(e);
  }
  return out;
}

template <Scalar S>
SparseVector<S> SparseVector<S>::restrict_to_range(Index lo, Index hi) const {
  SparseVector out;
  for (const auto& e : entries_) {
    if (e.first >= lo && e.first <= hi) out.entries_.push_back(e);
  }
  return out;
}

template <Scalar S>
S SparseVector<S>::sup_norm() const {
  S best(0);
  for (const auto& e : entries_) {
    S a = abs_value(e.second);
    if (a > best) best = a;
  }
  return best;
}

template <Scalar S>
double SparseVector<S>::lp_norm(double p) const {
  if (std::isinf(p)) return to_double(sup_norm());
  // Scale by the largest entry to avoid overflow in |v|^p.
  const double scale = to_double(sup_norm());
  if (scale == 0) return 0;
  double sum = 0;
  for (const auto& e : entries_) sum += std::pow(std::fabs(to_double(e.second)) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

template <Scalar S>
SparseVector<S> SparseVector<S>::abs() const {
  SparseVector out = *this;
  for (auto& e : out.entries_) e.second = abs_value(e.second);
  return out;
}

template <Scalar S>
SparseVector<S> SparseVector<S>::scaled(const S& c) const {
  if (c == 0) return {};
  SparseVector out = *this;
  for (auto& e : out.entries_) e.second = e.second * c;
  return out;
}

namespace {

Index parse_position(std::string_view text, Index window) {
  Index k = 0;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size() || k == 0) {
    throw ParseError("bad vector position '" + std::string(text) + "'");
  }
  if (k > window) throw ParseError("vector position " + std::to_string(k) + " exceeds the position window");
  return k;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

template <Scalar S>
SparseVector<S> build(std::vector<std::pair<Index, S>> entries) {
  try {
    return SparseVector<S>(std::move(entries));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

template <Scalar S>
SparseVector<S> parse_vector(std::string_view literal, Index position_window) {
  std::vector<std::pair<Index, S>> entries;
  literal = trim(literal);
  while (!literal.empty()) {
    const auto comma = literal.find(',');
    const std::string_view item = literal.substr(0, comma);
    literal = comma == std::string_view::npos ? std::string_view{} : literal.substr(comma + 1);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("vector entry '" + std::string(item) + "' lacks ':'");
    entries.emplace_back(parse_position(item.substr(0, colon), position_window),
                         parse_scalar<S>(trim(item.substr(colon + 1))));
  }
  return build(std::move(entries));
}

template <Scalar S>
SparseVector<S> parse_vector_json(std::string_view json, Index position_window) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("vector JSON must be an object");
  std::vector<std::pair<Index, S>> entries;
  for (const auto& [key, value] : j.items()) {
    const Index k = parse_position(key, position_window);
    if (value.is_string()) {
      entries.emplace_back(k, parse_scalar<S>(value.template get<std::string>()));
    } else if (value.is_number_integer()) {
      entries.emplace_back(k, S(value.template get<std::int64_t>()));
    } else if (value.is_number()) {
      // Decimal text of the number.
      entries.emplace_back(k, parse_scalar<S>(value.dump()));
    } else {
      throw ParseError("vector JSON value at '" + key + "' is not a number");
    }
  }
  return build(std::move(entries));
}

template <Scalar S>
std::string format_vector(const SparseVector<S>& x) {
  std::string out;
  for (const auto& [k, v] : x.entries()) {
    if (!out.empty()) out += ',';
    out += std::to_string(k) + ":" + format_scalar<S>(v);
  }
  return out;
}

template class SparseVector<double>;
template class SparseVector<Rational>;
template SparseVector<double> parse_vector<double>(std::string_view, Index);
template SparseVector<Rational> parse_vector<Rational>(std::string_view, Index);
template SparseVector<double> parse_vector_json<double>(std::string_view, Index);
template SparseVector<Rational> parse_vector_json<Rational>(std::string_view, Index);
template std::string format_vector<double>(const SparseVector<double>&);
template std::string format_vector<Rational>(const SparseVector<Rational>&);

}  // namespace tsirelson
