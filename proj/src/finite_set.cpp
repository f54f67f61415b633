#include "tsirelson/finite_set.hpp"

#include <algorithm>

#include "tsirelson/errors.hpp"

namespace tsirelson {

FiniteSet::FiniteSet(std::initializer_list<Index> elements) : FiniteSet(std::vector<Index>(elements)) {}

FiniteSet::FiniteSet(std::vector<Index> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == 0) throw InvalidArgument("finite set elements must be positive");
    if (i > 0 && elements_[i - 1] >= elements_[i]) {
      throw InvalidArgument("finite set elements must be strictly increasing");
    }
  }
}

Index FiniteSet::min() const {
  if (elements_.empty()) throw InvalidArgument("min of the empty set");
  return elements_.front();
}

Index FiniteSet::max() const {
  if (elements_.empty()) throw InvalidArgument("max of the empty set");
  return elements_.back();
}

bool FiniteSet::contains(Index i) const noexcept {
  return std::binary_search(elements_.begin(), elements_.end(), i);
}

bool FiniteSet::precedes(const FiniteSet& other) const noexcept {
  return !empty() && !other.empty() && max() < other.min();
}

std::strong_ordering operator<=>(const FiniteSet& a, const FiniteSet& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const FiniteSet& set) {
  std::string out = "[";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(set.elements()[i]);
  }
  out += ']';
  return out;
}

SuccessiveBlocks::SuccessiveBlocks(std::vector<FiniteSet> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InvalidArgument("successive blocks: at least one block is required");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].empty()) throw InvalidArgument("successive blocks: block " + std::to_string(i) + " is empty");
    if (i > 0 && !blocks_[i - 1].precedes(blocks_[i])) {
      throw InvalidArgument("successive blocks: block " + std::to_string(i - 1) + " does not precede block " +
                            std::to_string(i));
    }
  }
}

std::vector<BlockBounds> SuccessiveBlocks::bounds() const {
  std::vector<BlockBounds> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back({b.min(), b.max()});
  return out;
}

}  // namespace tsirelson
