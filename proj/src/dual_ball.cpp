#include "tsirelson/dual_ball.hpp"

#include <algorithm>

#include "tsirelson/errors.hpp"

namespace tsirelson {

namespace {

struct Enumerator {
  const FamilyExpr& family;
  const std::vector<Functional>& previous;  // K_{s-1}, sorted by min position
  std::vector<BlockBounds> bounds;          // parallel to previous
  std::size_t fresh_depth;                  // s - 1
  bool prune_by_prefix;
  std::size_t cap;
  std::vector<Functional>& out;

  void extend(std::vector<std::size_t>& chosen, Index last_max, bool has_fresh) {
    auto it = std::upper_bound(bounds.begin(), bounds.end(), last_max,
                               [](Index v, const BlockBounds& b) { return v < b.lo; });
    for (auto i = static_cast<std::size_t>(it - bounds.begin()); i < previous.size(); ++i) {
      chosen.push_back(i);
      std::vector<BlockBounds> tuple;
      tuple.reserve(chosen.size());
      for (std::size_t c : chosen) tuple.push_back(bounds[c]);
      const bool admissible = admissibility_witness(family, tuple).has_value();
      const bool fresh = has_fresh || previous[i].depth() == fresh_depth;
      if (admissible && fresh) {
        std::vector<Functional> children;
        for (std::size_t c : chosen) children.push_back(previous[c]);
        out.push_back(Functional::node(std::move(children)));
        if (out.size() > cap) throw LimitExceeded("dual ball enumeration exceeds " + std::to_string(cap));
      }
      if (admissible || !prune_by_prefix) extend(chosen, bounds[i].hi, fresh);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<Functional> dual_ball_enumerate(const FamilyExpr& family, Index support_bound, std::size_t depth,
                                            const EnumerateOptions& options) {
  if (support_bound == 0) throw InvalidArgument("support bound must be >= 1");
  std::vector<Functional> all;
  for (Index k = 1; k <= support_bound; ++k) {
    all.push_back(Functional::leaf(1, k));
    all.push_back(Functional::leaf(-1, k));
  }
  if (all.size() > options.max_functionals) {
    throw LimitExceeded("dual ball enumeration exceeds " + std::to_string(options.max_functionals));
  }
  for (std::size_t s = 1; s <= depth; ++s) {
    std::vector<Functional> previous = all;
    std::stable_sort(previous.begin(), previous.end(),
                     [](const Functional& a, const Functional& b) { return a.min_position() < b.min_position(); });
    Enumerator e{family, previous, {}, s - 1, family.is_builtin_hereditary(), options.max_functionals, all};
    e.bounds.reserve(previous.size());
    for (const auto& f : previous) e.bounds.push_back({f.min_position(), f.max_position()});
    std::vector<std::size_t> chosen;
    e.extend(chosen, 0, false);
  }
  return all;
}

}  // namespace tsirelson
