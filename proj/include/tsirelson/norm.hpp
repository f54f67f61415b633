#pragma once

#include <cstddef>
#include <cstdint>

#include "tsirelson/family.hpp"
#include "tsirelson/functional.hpp"
#include "tsirelson/scalar.hpp"
#include "tsirelson/sparse_vector.hpp"
#include "tsirelson/theta.hpp"

namespace tsirelson {

inline constexpr std::size_t kDefaultSupportCapFiniteRank = 64;
inline constexpr std::size_t kDefaultSupportCapGeneral = 40;
inline constexpr std::size_t kDefaultOracleSupportCap = 9;

struct NormOptions {
  /// 0 selects the default for the family (64 for FiniteRank, 40 otherwise).
  /// The environment variable TSIRELSON_MAX_SUPPORT overrides the default.
  std::size_t max_support = 0;
};

struct OracleOptions {
  /// 0 selects 9 (or TSIRELSON_ORACLE_MAX_SUPPORT).
  std::size_t max_support = 0;
};

std::size_t default_support_cap(const FamilyExpr& family);
std::size_t default_oracle_cap();

struct NormStats {
  std::size_t support_size = 0;
  std::size_t automaton_states = 0;
  std::uint64_t intervals = 0;
  std::uint64_t cells = 0;        // continuation table entries filled
  std::uint64_t transitions = 0;  // candidate moves examined
};

template <Scalar S>
struct NormResult {
  S value{};
  Functional certificate = Functional::leaf(1, 1);
  NormStats stats;
};

/// The norm defined by
///   ||x|| = max(||x||_inf, theta * sup sum_i ||E_i x||)
/// over admissible successive (E_1, ..., E_d), computed by a dynamic program
/// over intervals of supp(x). The certificate is a functional f with f(x) = ||x||.
/// Throws InvalidArgument for an unusable theta (RootForm with exact scalars)
/// and LimitExceeded when |supp x| exceeds the cap.
template <Scalar S>
NormResult<S> norm_exact(const FamilyExpr& family, const ThetaSpec& theta, const SparseVector<S>& x,
                         const NormOptions& options = {});

/// Exhaustive reference: recursion over all admissible tuples of successive
/// subsets of supp(x), checked with is_admissible.
template <Scalar S>
S norm_oracle(const FamilyExpr& family, const ThetaSpec& theta, const SparseVector<S>& x,
              const OracleOptions& options = {});

}  // namespace tsirelson
