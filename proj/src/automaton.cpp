#include "automaton.hpp"

#include <algorithm>

namespace tsirelson::detail {

WitnessAutomaton::WitnessAutomaton(const FamilyExpr& family, std::size_t max_blocks) {
  states_.push_back(State{});  // start
  add_component(family, std::max<std::size_t>(max_blocks, 1));
}

void WitnessAutomaton::add_component(const FamilyExpr& family, std::size_t max_blocks) {
  const auto& v = family.variant();
  if (const auto* u = std::get_if<family::Union>(&v)) {
    add_component(*u->left, max_blocks);
    add_component(*u->right, max_blocks);
    return;
  }
  const std::size_t index = components_.size();
  const int first = static_cast<int>(states_.size());
  if (const auto* f = std::get_if<family::FiniteRank>(&v)) {
    const std::size_t limit = std::min(f->n, max_blocks);
    components_.push_back(CountComponent{first, limit});
    for (std::size_t c = 1; c <= limit; ++c) states_.push_back({index, c, true, false});
  } else if (std::holds_alternative<family::Schreier>(v)) {
    // After m_1 is fixed, m_1 - |A| more elements may follow.
    const std::size_t limit = max_blocks - 1;
    components_.push_back(CapacityComponent{first, limit});
    for (std::size_t r = 0; r <= limit; ++r) states_.push_back({index, r, true, false});
  } else {
    const auto& members = std::get<family::Explicit>(v).members;
    const int root = static_cast<int>(trie_.size());
    trie_.emplace_back();
    components_.push_back(TrieComponent{root});
    for (const auto& m : members) {
      if (m.empty() || m.size() > max_blocks) continue;
      int node = root;
      for (Index e : m) {
        auto& kids = trie_[node].children;
        auto it = std::find_if(kids.begin(), kids.end(), [&](const auto& c) { return c.first == e; });
        if (it == kids.end()) {
          const int child = static_cast<int>(trie_.size());
          trie_[node].children.emplace_back(e, child);
          trie_.emplace_back();
          trie_[child].state = static_cast<int>(states_.size());
          states_.push_back({index, static_cast<std::size_t>(child), false, true});
          node = child;
        } else {
          node = it->second;
        }
      }
      states_[trie_[node].state].accepting = true;
    }
    for (auto& n : trie_) std::sort(n.children.begin(), n.children.end());
  }
}

void WitnessAutomaton::next(int q, Index lo, Index hi, std::vector<int>& out) const {
  if (q == kStart) {
    for (const auto& component : components_) {
      std::visit(
          [&](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, CountComponent>) {
              if (c.limit >= 1) out.push_back(c.first_state);
            } else if constexpr (std::is_same_v<C, CapacityComponent>) {
              // The largest admissible m_1 (= hi) dominates every smaller choice.
              const std::size_t r = std::min<std::size_t>(hi - 1, c.limit);
              out.push_back(c.first_state + static_cast<int>(r));
            } else {
              for (const auto& [e, child] : trie_[c.root_children].children) {
                if (e > lo && e <= hi) out.push_back(trie_[child].state);
              }
            }
          },
          component);
    }
    return;
  }
  const State& s = states_[q];
  std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, CountComponent>) {
          if (s.local < c.limit) out.push_back(q + 1);
        } else if constexpr (std::is_same_v<C, CapacityComponent>) {
          if (s.local >= 1) out.push_back(q - 1);
        } else {
          for (const auto& [e, child] : trie_[s.local].children) {
            if (e > lo && e <= hi) out.push_back(trie_[child].state);
          }
        }
      },
      components_[s.component]);
}

}  // namespace tsirelson::detail
