#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace tsirelson {

/// Position in the canonical basis; positions start at 1.
using Index = std::uint32_t;

/// Default upper bound on positions accepted by parsers and witness searches.
inline constexpr Index kDefaultPositionWindow = 1'000'000;

/// A finite subset of the positive integers, stored as a strictly increasing sequence.
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(std::initializer_list<Index> elements);
  /// Throws InvalidArgument unless `elements` is strictly increasing and positive.
  explicit FiniteSet(std::vector<Index> elements);

  bool empty() const noexcept { return elements_.empty(); }
  std::size_t size() const noexcept { return elements_.size(); }
  Index min() const;
  Index max() const;
  bool contains(Index i) const noexcept;

  const std::vector<Index>& elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  /// max(*this) < min(other); false if either side is empty.
  bool precedes(const FiniteSet& other) const noexcept;

  /// Shortlex order: by cardinality, then lexicographically.
  friend std::strong_ordering operator<=>(const FiniteSet& a, const FiniteSet& b);
  friend bool operator==(const FiniteSet& a, const FiniteSet& b) = default;

 private:
  std::vector<Index> elements_;
};

/// JSON-array text, e.g. "[2,3]".
std::string to_string(const FiniteSet& set);

/// The (min, max) pair of a nonempty block; admissibility only looks at these.
struct BlockBounds {
  Index lo;
  Index hi;
};

/// Nonempty tuple E_1 < E_2 < ... < E_d of nonempty finite sets.
class SuccessiveBlocks {
 public:
  /// Throws InvalidArgument on an empty tuple, an empty block, or overlapping blocks.
  explicit SuccessiveBlocks(std::vector<FiniteSet> blocks);

  std::size_t size() const noexcept { return blocks_.size(); }
  const FiniteSet& operator[](std::size_t i) const { return blocks_[i]; }
  const std::vector<FiniteSet>& blocks() const noexcept { return blocks_; }
  std::vector<BlockBounds> bounds() const;

 private:
  std::vector<FiniteSet> blocks_;
};

}  // namespace tsirelson
