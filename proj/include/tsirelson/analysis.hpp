#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tsirelson/family.hpp"
#include "tsirelson/functional.hpp"
#include "tsirelson/sparse_vector.hpp"

namespace tsirelson {

/// Level decomposition F^0, ..., F^m of a functional phi of depth m.
/// Each level is ordered by support.
struct Analysis {
  std::vector<std::vector<Functional>> levels;

  std::size_t depth() const noexcept { return levels.empty() ? 0 : levels.size() - 1; }
  const Functional& root() const { return levels.back().front(); }
};

/// F^s holds the maximal subtrees of phi of depth <= s. A subtree stays in
/// every level until the level where its parent appears.
/// Throws CertificateError if phi is not a valid functional for the family.
Analysis analyze(const FamilyExpr& family, const Functional& phi);

struct AnalysisCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks the analysis conditions directly from the level lists:
/// (1) each F^s is successive, its members lie in K_s and their supports partition supp(phi);
/// (2) each member of F^{s+1} is in F^s or is a node whose children are successive members of F^s;
/// (3) F^m = {phi};
/// plus nesting: for f1 in F^s and f2 in F^{s+1}, supp f1 is inside supp f2 or disjoint from it.
AnalysisCheck check_analysis(const FamilyExpr& family, const Functional& phi, const Analysis& analysis);

struct BlockSplit {
  SparseVector<double> initial;  // x'_k
  SparseVector<double> final;    // x''_k
  std::size_t critical_level;    // s_k
  std::size_t covering_count;    // d_k
};

/// Initial and final parts of each block with respect to the analysis.
/// Requires non-negative, successive, nonzero blocks whose supports union to supp(phi),
/// and a functional with only positive leaves; throws InvalidArgument otherwise.
std::vector<BlockSplit> split_initial_final(const Analysis& analysis, const std::vector<SparseVector<double>>& blocks);

}  // namespace tsirelson
