#include "tsirelson/norm.hpp"

#include <cstdlib>
#include <optional>
#include <string>

#include "automaton.hpp"
#include "tsirelson/errors.hpp"

namespace tsirelson {

namespace {

std::size_t env_cap(const char* name, std::size_t fallback) {
  if (const char* v = std::getenv(name)) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return fallback;
}

// A partial sum over a tuple of blocks. Ties prefer fewer blocks; among equal
// (sum, blocks) the first candidate examined wins, and candidates are examined
// in lexicographic order of block boundaries.
template <Scalar S>
struct Candidate {
  bool valid = false;
  S sum{};
  int blocks = 0;

  bool beats(const Candidate& other) const {
    if (!valid) return false;
    if (!other.valid) return true;
    if (sum != other.sum) return sum > other.sum;
    return blocks < other.blocks;
  }
};

struct FirstBlockChoice {
  bool leaf = true;
  int leaf_index = 0;
  bool starts_at_left = false;  // first block begins at the interval's left end
  int t = -1;                   // end of that first block
  int state = -1;               // automaton state after it
  bool cont = false;            // more blocks follow
};

struct ContinueChoice {
  int s = -1;  // start of the next block
  int state = -1;
};

struct BlockChoice {
  int t = -1;  // end of the block
  bool cont = false;
};

template <Scalar S>
class IntervalProgram {
 public:
  IntervalProgram(const FamilyExpr& family, const S& theta, const SparseVector<S>& x)
      : theta_(theta), automaton_(family, x.support_size()), n_(static_cast<int>(x.support_size())) {
    for (const auto& [k, v] : x.entries()) {
      pos_.push_back(k);
      val_.push_back(v);
    }
    const std::size_t q = automaton_.state_count();
    value_.assign(cell(n_, 0), S{});
    first_.assign(cell(n_, 0), FirstBlockChoice{});
    cont_choice_.assign(static_cast<std::size_t>(n_) * q * n_, ContinueChoice{});
    block_choice_.assign(static_cast<std::size_t>(n_) * q * n_, BlockChoice{});
    top_choice_.assign(static_cast<std::size_t>(n_) * (n_ + 1), ContinueChoice{});
    stats_.support_size = x.support_size();
    stats_.automaton_states = q;
  }

  NormResult<S> run() {
    const std::size_t q_count = automaton_.state_count();
    std::vector<Candidate<S>> cont(q_count * n_);   // F: best continuation after a block ending at e
    std::vector<Candidate<S>> block(q_count * n_);  // G: best run whose next block starts at s
    std::vector<Candidate<S>> top(n_ + 1);          // best first block starting at s' >= s
    std::vector<int> succ;

    for (int b = 0; b < n_; ++b) {
      std::fill(cont.begin(), cont.end(), Candidate<S>{});
      std::fill(block.begin(), block.end(), Candidate<S>{});
      std::fill(top.begin(), top.end(), Candidate<S>{});
      int leaf_index = b;
      for (int a = b; a >= 0; --a) {
        if (abs_value(val_[a]) >= abs_value(val_[leaf_index])) leaf_index = a;

        // F(q, a): blocks after one ending at a.
        for (std::size_t q = 1; q < q_count; ++q) {
          Candidate<S> best;
          ContinueChoice choice;
          if (a < b) {
            const int s_last = automaton_.uses_lower_bound(static_cast<int>(q)) ? b : a + 1;
            for (int s = a + 1; s <= s_last; ++s) {
              succ.clear();
              automaton_.next(static_cast<int>(q), pos_[a], pos_[s], succ);
              for (int q2 : succ) {
                ++stats_.transitions;
                const auto& c = block[q2 * n_ + s];
                if (c.beats(best)) {
                  best = c;
                  choice = {s, q2};
                }
              }
            }
            if (s_last == a + 1 && a + 1 < b) {
              const auto& tail = cont[q * n_ + a + 1];
              if (tail.beats(best)) {
                best = tail;
                choice = cont_choice_[index3(b, q, a + 1)];
              }
            }
          }
          cont[q * n_ + a] = best;
          cont_choice_[index3(b, q, a)] = choice;
          ++stats_.cells;
        }

        // N(a, b)
        Candidate<S> best;
        FirstBlockChoice choice;
        succ.clear();
        automaton_.next(detail::WitnessAutomaton::kStart, 0, pos_[a], succ);
        for (int t = a; t < b; ++t) {
          for (int q2 : succ) {
            ++stats_.transitions;
            auto [c, more] = extend(value_[cell(a, t)], q2, t, b, cont);
            if (c.beats(best)) {
              best = c;
              choice = {false, 0, true, t, q2, more};
            }
          }
        }
        if (a < b && top[a + 1].beats(best)) {
          best = top[a + 1];
          choice = {false, 0, false, -1, -1, false};
        }
        const S leaf_value = abs_value(val_[leaf_index]);
        if (best.valid && theta_ * best.sum > leaf_value) {
          value_[cell(a, b)] = theta_ * best.sum;
          first_[cell(a, b)] = choice;
        } else {
          value_[cell(a, b)] = leaf_value;
          first_[cell(a, b)] = FirstBlockChoice{true, leaf_index};
        }
        ++stats_.intervals;

        // G(q, a): a block [a, t] leaving the automaton in q, then the best continuation.
        for (std::size_t q = 1; q < q_count; ++q) {
          Candidate<S> g;
          BlockChoice bc;
          for (int t = a; t <= b; ++t) {
            auto [c, more] = extend(value_[cell(a, t)], static_cast<int>(q), t, b, cont);
            if (c.beats(g)) {
              g = c;
              bc = {t, more};
            }
          }
          block[q * n_ + a] = g;
          block_choice_[index3(b, q, a)] = bc;
          ++stats_.cells;
        }

        // Best first block starting at a or later.
        Candidate<S> t_best;
        ContinueChoice t_choice;
        for (int q2 : succ) {
          const auto& c = block[q2 * n_ + a];
          if (c.beats(t_best)) {
            t_best = c;
            t_choice = {a, q2};
          }
        }
        if (top[a + 1].beats(t_best)) {
          t_best = top[a + 1];
          t_choice = top_choice_[top_index(b, a + 1)];
        }
        top[a] = t_best;
        top_choice_[top_index(b, a)] = t_choice;
      }
    }

    NormResult<S> result;
    result.value = value_[cell(0, n_ - 1)];
    result.certificate = certificate(0, n_ - 1);
    result.stats = stats_;
    return result;
  }

 private:
  // Block value plus the best way to stop or continue from state q after position t.
  std::pair<Candidate<S>, bool> extend(const S& block_value, int q, int t, int b,
                                       const std::vector<Candidate<S>>& cont) const {
    Candidate<S> stop;
    if (automaton_.accepting(q)) stop = {true, S(0), 0};
    bool more = false;
    if (t < b) {
      const auto& c = cont[q * n_ + t];
      if (c.beats(stop)) {
        stop = c;
        more = true;
      }
    }
    if (!stop.valid) return {Candidate<S>{}, false};
    return {Candidate<S>{true, block_value + stop.sum, stop.blocks + 1}, more};
  }

  Functional certificate(int a, int b) const {
    const auto& choice = first_[cell(a, b)];
    if (choice.leaf) {
      const int i = choice.leaf_index;
      return Functional::leaf(val_[i] < 0 ? -1 : 1, pos_[i]);
    }
    std::vector<Functional> children;
    int s = a;
    int t = choice.t;
    int q = choice.state;
    bool more = choice.cont;
    if (!choice.starts_at_left) {
      const auto& tc = top_choice_[top_index(b, a + 1)];
      s = tc.s;
      q = tc.state;
      const auto& bc = block_choice_[index3(b, q, s)];
      t = bc.t;
      more = bc.cont;
    }
    children.push_back(certificate(s, t));
    while (more) {
      const auto& cc = cont_choice_[index3(b, q, t)];
      s = cc.s;
      q = cc.state;
      const auto& bc = block_choice_[index3(b, q, s)];
      t = bc.t;
      more = bc.cont;
      children.push_back(certificate(s, t));
    }
    return Functional::node(std::move(children));
  }

  std::size_t cell(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }
  std::size_t index3(int b, std::size_t q, int i) const {
    return (static_cast<std::size_t>(b) * automaton_.state_count() + q) * n_ + i;
  }
  std::size_t top_index(int b, int s) const { return static_cast<std::size_t>(b) * (n_ + 1) + s; }

  S theta_;
  detail::WitnessAutomaton automaton_;
  int n_;
  std::vector<Index> pos_;
  std::vector<S> val_;
  std::vector<S> value_;
  std::vector<FirstBlockChoice> first_;
  std::vector<ContinueChoice> cont_choice_;
  std::vector<BlockChoice> block_choice_;
  std::vector<ContinueChoice> top_choice_;
  NormStats stats_;
};

// Exhaustive recursion over subsets of the support, indexed by bitmask.
template <Scalar S>
class SubsetOracle {
 public:
  SubsetOracle(const FamilyExpr& family, const S& theta, const SparseVector<S>& x)
      : family_(family), theta_(theta), n_(static_cast<int>(x.support_size())) {
    for (const auto& [k, v] : x.entries()) {
      pos_.push_back(k);
      val_.push_back(v);
    }
    memo_.resize(std::size_t{1} << n_);
  }

  S norm(unsigned mask) {
    if (mask == 0) return S(0);
    if (memo_[mask]) return *memo_[mask];
    S sup(0);
    for (int i = 0; i < n_; ++i) {
      if (mask >> i & 1u) sup = std::max(sup, abs_value(val_[i]));
    }
    std::vector<int> elements;
    for (int i = 0; i < n_; ++i) {
      if (mask >> i & 1u) elements.push_back(i);
    }
    std::optional<S> best;
    std::vector<unsigned> blocks;
    std::vector<BlockBounds> bounds;
    tuples(mask, elements, 0, blocks, bounds, best);
    S value = sup;
    if (best && theta_ * *best > value) value = theta_ * *best;
    memo_[mask] = value;
    return value;
  }

 private:
  // Extends the current tuple by every block drawn from elements[from..].
  void tuples(unsigned mask, const std::vector<int>& elements, std::size_t from, std::vector<unsigned>& blocks,
              std::vector<BlockBounds>& bounds, std::optional<S>& best) {
    for (std::size_t last = from; last < elements.size(); ++last) {
      const std::size_t free = last - from;
      for (unsigned pick = 0; pick < (1u << free); ++pick) {
        unsigned block = 1u << elements[last];
        int first = elements[last];
        for (std::size_t j = 0; j < free; ++j) {
          if (pick >> j & 1u) {
            block |= 1u << elements[from + j];
            first = std::min(first, elements[from + j]);
          }
        }
        blocks.push_back(block);
        bounds.push_back({pos_[first], pos_[elements[last]]});
        const bool whole = blocks.size() == 1 && block == mask;
        if (!whole && admissibility_witness(family_, bounds)) {
          S sum(0);
          for (unsigned b : blocks) sum += norm(b);
          if (!best || sum > *best) best = sum;
        }
        tuples(mask, elements, last + 1, blocks, bounds, best);
        blocks.pop_back();
        bounds.pop_back();
      }
    }
  }

  const FamilyExpr& family_;
  S theta_;
  int n_;
  std::vector<Index> pos_;
  std::vector<S> val_;
  std::vector<std::optional<S>> memo_;
};

}  // namespace

std::size_t default_support_cap(const FamilyExpr& family) {
  const bool finite_rank = std::holds_alternative<family::FiniteRank>(family.variant());
  return env_cap("TSIRELSON_MAX_SUPPORT", finite_rank ? kDefaultSupportCapFiniteRank : kDefaultSupportCapGeneral);
}

std::size_t default_oracle_cap() { return env_cap("TSIRELSON_ORACLE_MAX_SUPPORT", kDefaultOracleSupportCap); }

template <Scalar S>
NormResult<S> norm_exact(const FamilyExpr& family, const ThetaSpec& theta, const SparseVector<S>& x,
                         const NormOptions& options) {
  const S t = theta.as<S>();
  const std::size_t cap = options.max_support ? options.max_support : default_support_cap(family);
  if (x.support_size() > cap) {
    throw LimitExceeded("support size " + std::to_string(x.support_size()) + " exceeds the DP cap " +
                        std::to_string(cap));
  }
  if (x.is_zero()) return NormResult<S>{S(0), Functional::leaf(1, 1), {}};
  return IntervalProgram<S>(family, t, x).run();
}

template <Scalar S>
S norm_oracle(const FamilyExpr& family, const ThetaSpec& theta, const SparseVector<S>& x,
              const OracleOptions& options) {
  const S t = theta.as<S>();
  const std::size_t cap = std::min<std::size_t>(options.max_support ? options.max_support : default_oracle_cap(), 20);
  if (x.support_size() > cap) {
    throw LimitExceeded("support size " + std::to_string(x.support_size()) + " exceeds the oracle cap " +
                        std::to_string(cap));
  }
  SubsetOracle<S> oracle(family, t, x);
  return oracle.norm((1u << x.support_size()) - 1);
}

template NormResult<double> norm_exact<double>(const FamilyExpr&, const ThetaSpec&, const SparseVector<double>&,
                                               const NormOptions&);
template NormResult<Rational> norm_exact<Rational>(const FamilyExpr&, const ThetaSpec&,
                                                   const SparseVector<Rational>&, const NormOptions&);
template double norm_oracle<double>(const FamilyExpr&, const ThetaSpec&, const SparseVector<double>&,
                                    const OracleOptions&);
template Rational norm_oracle<Rational>(const FamilyExpr&, const ThetaSpec&, const SparseVector<Rational>&,
                                        const OracleOptions&);

}  // namespace tsirelson
