#pragma once

#include <cstddef>
#include <vector>

#include "tsirelson/family.hpp"
#include "tsirelson/functional.hpp"

namespace tsirelson {

struct EnumerateOptions {
  std::size_t max_functionals = 2'000'000;
};

/// All members of K_depth supported in [1, support_bound], each once (up to
/// structural equality), ordered by depth of first appearance.
/// Throws LimitExceeded when more than max_functionals would be produced.
std::vector<Functional> dual_ball_enumerate(const FamilyExpr& family, Index support_bound, std::size_t depth,
                                            const EnumerateOptions& options = {});

}  // namespace tsirelson
