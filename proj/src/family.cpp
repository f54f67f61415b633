#include "tsirelson/family.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include <json.hpp>

#include "tsirelson/errors.hpp"

namespace tsirelson {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool has_prefix(const FiniteSet& member, std::span<const Index> prefix) {
  if (member.size() < prefix.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), member.begin());
}

// Values worth trying for the next witness element m in (lo, hi], given the
// chosen prefix and the required final size. For FiniteRank and Schreier the
// largest value represents every feasible choice.
void candidates(const FamilyExpr& family, std::span<const Index> prefix, Index lo, Index hi, std::size_t target,
                std::vector<Index>& out) {
  std::visit(Overloaded{
                 [&](const family::FiniteRank& f) {
                   if (target <= f.n) out.push_back(hi);
                 },
                 [&](const family::Schreier&) {
                   const Index first = prefix.empty() ? hi : prefix.front();
                   if (target <= first) out.push_back(hi);
                 },
                 [&](const family::Explicit& f) {
                   for (const auto& m : f.members) {
                     if (m.size() != target || !has_prefix(m, prefix)) continue;
                     const Index next = m.elements()[prefix.size()];
                     if (next > lo && next <= hi) out.push_back(next);
                   }
                 },
                 [&](const family::Union& f) {
                   candidates(*f.left, prefix, lo, hi, target, out);
                   candidates(*f.right, prefix, lo, hi, target, out);
                 },
             },
             family.variant());
}

bool search_witness(const FamilyExpr& family, std::span<const BlockBounds> bounds, std::vector<Index>& prefix) {
  const std::size_t i = prefix.size();
  if (i == bounds.size()) return contains(family, FiniteSet(prefix));
  const Index lo = i == 0 ? 0 : bounds[i - 1].hi;
  const Index hi = bounds[i].lo;
  std::vector<Index> next;
  candidates(family, prefix, lo, hi, bounds.size(), next);
  std::sort(next.begin(), next.end(), std::greater<>());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  for (Index m : next) {
    prefix.push_back(m);
    if (search_witness(family, bounds, prefix)) return true;
    prefix.pop_back();
  }
  return false;
}

std::size_t explicit_tree_rank(const std::vector<FiniteSet>& members) {
  // Children of A are the members A ∪ {m} with m > max A.
  std::map<std::vector<Index>, std::vector<const FiniteSet*>> children;
  std::set<std::vector<Index>> nodes;
  for (const auto& m : members) nodes.insert(m.elements());
  for (const auto& m : members) {
    if (m.empty()) continue;
    std::vector<Index> parent(m.begin(), m.end() - 1);
    children[parent].push_back(&m);
  }
  std::map<std::vector<Index>, std::size_t> memo;
  auto rank_of = [&](auto&& self, const std::vector<Index>& node) -> std::size_t {
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    std::size_t r = 0;
    if (auto it = children.find(node); it != children.end()) {
      for (const FiniteSet* c : it->second) r = std::max(r, self(self, c->elements()) + 1);
    }
    memo.emplace(node, r);
    return r;
  };
  return rank_of(rank_of, {});
}

void enumerate_hereditary(const FamilyExpr& family, Index n_max, std::vector<Index>& current,
                          std::vector<FiniteSet>& out, std::size_t cap) {
  out.emplace_back(current);
  if (out.size() > cap) throw LimitExceeded("truncate: more than " + std::to_string(cap) + " members");
  const Index start = current.empty() ? 1 : current.back() + 1;
  for (Index m = start; m <= n_max; ++m) {
    current.push_back(m);
    if (contains(family, FiniteSet(current))) enumerate_hereditary(family, n_max, current, out, cap);
    current.pop_back();
  }
}

void collect_truncation(const FamilyExpr& family, Index n_max, std::size_t cap, std::set<FiniteSet>& out) {
  std::visit(Overloaded{
                 [&](const family::Explicit& f) {
                   for (const auto& m : f.members) {
                     if (m.empty() || m.max() <= n_max) out.insert(m);
                   }
                 },
                 [&](const family::Union& f) {
                   collect_truncation(*f.left, n_max, cap, out);
                   collect_truncation(*f.right, n_max, cap, out);
                 },
                 [&](const auto&) {
                   std::vector<FiniteSet> members;
                   std::vector<Index> current;
                   enumerate_hereditary(family, n_max, current, members, cap);
                   out.insert(members.begin(), members.end());
                 },
             },
             family.variant());
  if (out.size() > cap) throw LimitExceeded("truncate: more than " + std::to_string(cap) + " members");
}

// Recursive-descent parser for the family literal grammar.
class FamilyParser {
 public:
  explicit FamilyParser(std::string_view text) : text_(text) {}

  FamilyExpr parse_all() {
    FamilyExpr f = parse();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  FamilyExpr parse() {
    skip_space();
    if (consume("schreier")) return FamilyExpr::schreier();
    if (consume("finite-rank:")) return FamilyExpr::finite_rank(parse_count());
    if (consume("explicit:")) return parse_explicit();
    if (consume("union(")) {
      FamilyExpr left = parse();
      skip_space();
      if (!consume(",")) fail("expected ',' in union");
      FamilyExpr right = parse();
      skip_space();
      if (!consume(")")) fail("expected ')' closing union");
      return FamilyExpr::union_of(std::move(left), std::move(right));
    }
    fail("unknown family");
  }

  std::size_t parse_count() {
    std::size_t n = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc() || ptr == first) fail("expected a positive integer");
    if (n == 0) fail("finite-rank needs n >= 1");
    pos_ += static_cast<std::size_t>(ptr - first);
    return n;
  }

  FamilyExpr parse_explicit() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '[') fail("expected '[' after explicit:");
    std::size_t depth = 0;
    std::size_t end = pos_;
    for (; end < text_.size(); ++end) {
      if (text_[end] == '[') ++depth;
      if (text_[end] == ']' && --depth == 0) break;
    }
    if (end == text_.size()) fail("unbalanced brackets in explicit family");
    const std::string_view body = text_.substr(pos_, end + 1 - pos_);
    pos_ = end + 1;
    nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_array()) fail("explicit family must be a JSON array of arrays");
    std::vector<FiniteSet> members;
    for (const auto& set : j) {
      if (!set.is_array()) fail("explicit family members must be arrays");
      std::vector<Index> elements;
      for (const auto& e : set) {
        if (!e.is_number_unsigned()) fail("set elements must be positive integers");
        elements.push_back(e.get<Index>());
      }
      try {
        members.emplace_back(std::move(elements));
      } catch (const InvalidArgument& e) {
        fail(e.what());
      }
    }
    try {
      return FamilyExpr::explicit_family(std::move(members));
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("family literal '" + std::string(text_) + "': " + why + " (at offset " +
                     std::to_string(pos_) + ")");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FamilyExpr FamilyExpr::finite_rank(std::size_t n) {
  if (n == 0) throw InvalidArgument("finite-rank family needs n >= 1");
  return FamilyExpr(family::FiniteRank{n});
}

FamilyExpr FamilyExpr::schreier() { return FamilyExpr(family::Schreier{}); }

FamilyExpr FamilyExpr::explicit_family(std::vector<FiniteSet> members) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw InvalidArgument("explicit family lists a set twice");
  }
  return FamilyExpr(family::Explicit{std::move(members)});
}

FamilyExpr FamilyExpr::union_of(FamilyExpr left, FamilyExpr right) {
  return FamilyExpr(family::Union{std::make_shared<const FamilyExpr>(std::move(left)),
                                  std::make_shared<const FamilyExpr>(std::move(right))});
}

bool FamilyExpr::is_builtin_hereditary() const {
  return std::visit(Overloaded{
                        [](const family::Explicit&) { return false; },
                        [](const family::Union& f) {
                          return f.left->is_builtin_hereditary() && f.right->is_builtin_hereditary();
                        },
                        [](const auto&) { return true; },
                    },
                    node_);
}

std::optional<std::size_t> FamilyExpr::max_member_size() const {
  return std::visit(Overloaded{
                        [](const family::FiniteRank& f) -> std::optional<std::size_t> { return f.n; },
                        [](const family::Schreier&) -> std::optional<std::size_t> { return std::nullopt; },
                        [](const family::Explicit& f) -> std::optional<std::size_t> {
                          std::size_t m = 0;
                          for (const auto& s : f.members) m = std::max(m, s.size());
                          return m;
                        },
                        [](const family::Union& f) -> std::optional<std::size_t> {
                          auto l = f.left->max_member_size();
                          auto r = f.right->max_member_size();
                          if (!l || !r) return std::nullopt;
                          return std::max(*l, *r);
                        },
                    },
                    node_);
}

bool contains(const FamilyExpr& family, const FiniteSet& a) {
  return std::visit(Overloaded{
                        [&](const family::FiniteRank& f) { return a.size() <= f.n; },
                        [&](const family::Schreier&) { return a.empty() || a.size() <= a.min(); },
                        [&](const family::Explicit& f) {
                          return std::binary_search(f.members.begin(), f.members.end(), a);
                        },
                        [&](const family::Union& f) { return contains(*f.left, a) || contains(*f.right, a); },
                    },
                    family.variant());
}

std::optional<FiniteSet> admissibility_witness(const FamilyExpr& family, std::span<const BlockBounds> bounds,
                                               const AdmissibilityOptions& options) {
  if (bounds.empty()) throw InvalidArgument("admissibility needs at least one block");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i].lo == 0 || bounds[i].lo > bounds[i].hi) throw InvalidArgument("malformed block bounds");
    if (i > 0 && bounds[i - 1].hi >= bounds[i].lo) throw InvalidArgument("blocks are not successive");
    if (bounds[i].hi > options.position_window) {
      throw LimitExceeded("block position " + std::to_string(bounds[i].hi) + " exceeds the position window");
    }
  }
  std::vector<Index> prefix;
  prefix.reserve(bounds.size());
  if (!search_witness(family, bounds, prefix)) return std::nullopt;
  return FiniteSet(std::move(prefix));
}

std::optional<FiniteSet> is_admissible(const FamilyExpr& family, const SuccessiveBlocks& blocks,
                                       const AdmissibilityOptions& options) {
  const auto bounds = blocks.bounds();
  return admissibility_witness(family, bounds, options);
}

OrdinalRank rank(const FamilyExpr& family) {
  return std::visit(Overloaded{
                        [](const family::FiniteRank& f) { return OrdinalRank::finite(f.n); },
                        [](const family::Schreier&) { return OrdinalRank::omega(); },
                        [](const family::Explicit& f) { return OrdinalRank::finite(explicit_tree_rank(f.members)); },
                        [](const family::Union& f) { return std::max(rank(*f.left), rank(*f.right)); },
                    },
                    family.variant());
}

FamilyExpr truncate(const FamilyExpr& family, Index n_max, const TruncateOptions& options) {
  if (n_max == 0) throw InvalidArgument("truncate: n_max must be >= 1");
  std::set<FiniteSet> members;
  collect_truncation(family, n_max, options.max_members, members);
  return FamilyExpr::explicit_family({members.begin(), members.end()});
}

FamilyExpr parse_family(std::string_view literal) { return FamilyParser(literal).parse_all(); }

std::string format_family(const FamilyExpr& family) {
  return std::visit(Overloaded{
                        [](const family::FiniteRank& f) { return "finite-rank:" + std::to_string(f.n); },
                        [](const family::Schreier&) { return std::string("schreier"); },
                        [](const family::Explicit& f) {
                          std::string out = "explicit:[";
                          for (std::size_t i = 0; i < f.members.size(); ++i) {
                            if (i > 0) out += ',';
                            out += to_string(f.members[i]);
                          }
                          return out + "]";
                        },
                        [](const family::Union& f) {
                          return "union(" + format_family(*f.left) + "," + format_family(*f.right) + ")";
                        },
                    },
                    family.variant());
}

}  // namespace tsirelson
