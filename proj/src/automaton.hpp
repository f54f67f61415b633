#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "tsirelson/family.hpp"

namespace tsirelson::detail {

// Tracks the partial witness {m_1, ..., m_j} while blocks are consumed left to
// right. Consuming a block whose window is (lo, hi] (lo = max of the previous
// block, or 0; hi = min of the block) moves to every state reachable by one
// more witness element m in that window. A tuple of blocks is admissible iff
// some run ends in an accepting state.
//
// Unions are flattened into independent components sharing the start state.
class WitnessAutomaton {
 public:
  static constexpr int kStart = 0;

  // `max_blocks` bounds the number of blocks ever consumed (the support size).
  WitnessAutomaton(const FamilyExpr& family, std::size_t max_blocks);

  std::size_t state_count() const noexcept { return states_.size(); }
  bool accepting(int q) const { return states_[q].accepting; }
  // False when next(q, lo, hi) does not depend on lo.
  bool uses_lower_bound(int q) const { return states_[q].uses_lower_bound; }

  // Appends the successors of q; the output never contains kStart.
  void next(int q, Index lo, Index hi, std::vector<int>& out) const;

 private:
  struct CountComponent {
    int first_state;  // count c lives at first_state + c - 1
    std::size_t limit;
  };
  struct CapacityComponent {
    int first_state;  // remaining capacity r lives at first_state + r
    std::size_t limit;
  };
  struct TrieComponent {
    int root_children;  // index into trie_ of the synthetic root
  };
  using Component = std::variant<CountComponent, CapacityComponent, TrieComponent>;

  struct State {
    std::size_t component = 0;
    std::size_t local = 0;  // count, capacity or trie node
    bool accepting = false;
    bool uses_lower_bound = false;
  };
  struct TrieNode {
    std::vector<std::pair<Index, int>> children;  // (element, trie node), sorted by element
    int state = -1;
  };

  void add_component(const FamilyExpr& family, std::size_t max_blocks);

  std::vector<Component> components_;
  std::vector<State> states_;
  std::vector<TrieNode> trie_;
};

}  // namespace tsirelson::detail
