#include "tsirelson/analysis.hpp"

#include <algorithm>

#include "tsirelson/errors.hpp"

namespace tsirelson {

namespace {

void maximal_subtrees(const Functional& f, std::size_t level, std::vector<Functional>& out) {
  if (f.depth() <= level) {
    out.push_back(f);
    return;
  }
  for (const auto& c : f.children()) maximal_subtrees(c, level, out);
}

bool meets(const FiniteSet& a, const FiniteSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

bool includes(const FiniteSet& outer, const FiniteSet& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

bool all_leaves_positive(const Functional& f) {
  if (f.is_leaf()) return f.as_leaf().sign > 0;
  return std::all_of(f.children().begin(), f.children().end(), all_leaves_positive);
}

}  // namespace

Analysis analyze(const FamilyExpr& family, const Functional& phi) {
  const std::size_t m = validate_functional(family, phi);
  Analysis out;
  out.levels.resize(m + 1);
  for (std::size_t s = 0; s <= m; ++s) maximal_subtrees(phi, s, out.levels[s]);
  return out;
}

AnalysisCheck check_analysis(const FamilyExpr& family, const Functional& phi, const Analysis& analysis) {
  AnalysisCheck check;
  auto violation = [&](std::string what) {
    check.ok = false;
    check.violations.push_back(std::move(what));
  };
  const auto& levels = analysis.levels;
  if (levels.empty()) {
    violation("no levels");
    return check;
  }
  const std::size_t m = levels.size() - 1;
  if (levels[m].size() != 1 || !(levels[m].front() == phi)) violation("(3): top level is not {phi}");
  if (m != phi.depth()) violation("(3): analysis length does not match the depth of phi");

  const FiniteSet phi_support = phi.support();
  std::vector<std::vector<FiniteSet>> supports(levels.size());
  for (std::size_t s = 0; s <= m; ++s) {
    const auto tag = "(1) level " + std::to_string(s) + ": ";
    std::vector<Index> covered;
    for (std::size_t i = 0; i < levels[s].size(); ++i) {
      const Functional& f = levels[s][i];
      try {
        if (validate_functional(family, f) > s) violation(tag + "member " + std::to_string(i) + " is not in K_s");
      } catch (const CertificateError& e) {
        violation(tag + "member " + std::to_string(i) + " is invalid: " + e.what());
      }
      if (i > 0 && levels[s][i - 1].max_position() >= f.min_position()) {
        violation(tag + "members " + std::to_string(i - 1) + ", " + std::to_string(i) + " are not successive");
      }
      supports[s].push_back(f.support());
      covered.insert(covered.end(), supports[s].back().begin(), supports[s].back().end());
    }
    std::sort(covered.begin(), covered.end());
    if (covered != phi_support.elements()) violation(tag + "supports do not partition supp(phi)");
  }

  for (std::size_t s = 0; s < m; ++s) {
    const auto& lower = levels[s];
    for (std::size_t i = 0; i < levels[s + 1].size(); ++i) {
      const Functional& f = levels[s + 1][i];
      const bool persisted = std::find(lower.begin(), lower.end(), f) != lower.end();
      bool composed = !f.is_leaf();
      if (composed) {
        for (const auto& c : f.children()) {
          if (std::find(lower.begin(), lower.end(), c) == lower.end()) composed = false;
        }
      }
      if (!persisted && !composed) {
        violation("(2) level " + std::to_string(s + 1) + ": member " + std::to_string(i) +
                  " is neither in the level below nor built from it");
      }
    }
    for (const auto& lo : supports[s]) {
      for (const auto& hi : supports[s + 1]) {
        if (meets(lo, hi) && !includes(hi, lo)) {
          violation("nesting: a support at level " + std::to_string(s) + " straddles one at level " +
                    std::to_string(s + 1));
        }
      }
    }
  }
  return check;
}

std::vector<BlockSplit> split_initial_final(const Analysis& analysis, const std::vector<SparseVector<double>>& blocks) {
  if (analysis.levels.empty()) throw InvalidArgument("empty analysis");
  const Functional& phi = analysis.root();
  if (!all_leaves_positive(phi)) throw InvalidArgument("the analysed functional must be non-negative");
  std::vector<Index> covered;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& x = blocks[k];
    if (x.is_zero()) throw InvalidArgument("block " + std::to_string(k) + " is zero");
    for (const auto& [pos, v] : x.entries()) {
      if (v < 0) throw InvalidArgument("block " + std::to_string(k) + " has a negative coordinate");
      covered.push_back(pos);
    }
    if (k > 0 && blocks[k - 1].entries().back().first >= x.entries().front().first) {
      throw InvalidArgument("blocks " + std::to_string(k - 1) + " and " + std::to_string(k) + " are not successive");
    }
  }
  if (covered != phi.support().elements()) {
    throw InvalidArgument("the block supports do not union to supp(phi)");
  }

  const std::size_t m = analysis.depth();
  std::vector<std::vector<FiniteSet>> supports(m + 1);
  for (std::size_t s = 0; s <= m; ++s) {
    for (const auto& f : analysis.levels[s]) supports[s].push_back(f.support());
  }

  std::vector<BlockSplit> out;
  out.reserve(blocks.size());
  for (const auto& x : blocks) {
    if (x.support_size() == 1) {
      out.push_back({x, {}, 0, 1});
      continue;
    }
    const FiniteSet xs = x.support();
    std::optional<std::size_t> critical;
    for (std::size_t s = 0; s < m; ++s) {
      const auto meeting = std::count_if(supports[s].begin(), supports[s].end(),
                                         [&](const FiniteSet& f) { return meets(f, xs); });
      if (meeting >= 2) critical = s;
    }
    if (!critical) throw InvalidArgument("no level splits a block with two or more coordinates");
    std::vector<const FiniteSet*> covering;
    for (const auto& f : supports[*critical]) {
      if (meets(f, xs)) covering.push_back(&f);
    }
    std::vector<Index> rest;
    for (std::size_t i = 1; i < covering.size(); ++i) {
      rest.insert(rest.end(), covering[i]->begin(), covering[i]->end());
    }
    out.push_back({x.restrict_to(*covering.front()), x.restrict_to(FiniteSet(std::move(rest))), *critical,
                   covering.size()});
  }
  return out;
}

}  // namespace tsirelson
