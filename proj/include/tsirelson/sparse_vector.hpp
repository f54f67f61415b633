#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsirelson/errors.hpp"
#include "tsirelson/finite_set.hpp"
#include "tsirelson/scalar.hpp"

namespace tsirelson {

/// A finitely supported sequence. Entries are sorted by position and never zero.
template <Scalar S>
class SparseVector {
 public:
  using Entry = std::pair<Index, S>;

  SparseVector() = default;
  /// Zero coefficients are dropped; repeated positions and position 0 are rejected.
  explicit SparseVector(std::vector<Entry> entries);
  explicit SparseVector(const std::map<Index, S>& entries);

  /// e_k
  static SparseVector unit(Index k);
  /// e_first + ... + e_last
  static SparseVector ones(Index first, Index last);

  bool is_zero() const noexcept { return entries_.empty(); }
  std::size_t support_size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  FiniteSet support() const;

  S operator[](Index k) const;

  /// E x
  SparseVector restrict_to(const FiniteSet& set) const;
  /// Restriction to the positions lo..hi inclusive.
  SparseVector restrict_to_range(Index lo, Index hi) const;

  S sup_norm() const;
  /// l^p norm, evaluated in double precision.
  double lp_norm(double p) const;

  SparseVector abs() const;
  SparseVector scaled(const S& c) const;

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
    std::map<Index, S> acc;
    for (const auto& [k, v] : a.entries_) acc[k] += v;
    for (const auto& [k, v] : b.entries_) acc[k] += v;
    return SparseVector(acc);
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

/// "1:1,2:0.5,5:-2"; an empty string is the zero vector.
template <Scalar S>
SparseVector<S> parse_vector(std::string_view literal, Index position_window = kDefaultPositionWindow);

/// {"1":1,"2":0.5}; values may be numbers or strings ("3/4").
template <Scalar S>
SparseVector<S> parse_vector_json(std::string_view json, Index position_window = kDefaultPositionWindow);

template <Scalar S>
std::string format_vector(const SparseVector<S>& x);

extern template class SparseVector<double>;
extern template class SparseVector<Rational>;

}  // namespace tsirelson
