#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tsirelson/finite_set.hpp"
#include "tsirelson/ordinal.hpp"

namespace tsirelson {

class FamilyExpr;

namespace family {

/// {A : |A| <= n}
struct FiniteRank {
  std::size_t n;
};

/// {A : |A| <= min A}, together with the empty set.
struct Schreier {};

/// Exactly the listed sets. Members are kept in shortlex order.
struct Explicit {
  std::vector<FiniteSet> members;
};

struct Union {
  std::shared_ptr<const FamilyExpr> left;
  std::shared_ptr<const FamilyExpr> right;
};

}  // namespace family

/// A compact family of finite subsets of the positive integers, built from a
/// closed set of constructors. Immutable; copies share sub-expressions.
class FamilyExpr {
 public:
  using Variant = std::variant<family::FiniteRank, family::Schreier, family::Explicit, family::Union>;

  static FamilyExpr finite_rank(std::size_t n);
  static FamilyExpr schreier();
  /// Throws InvalidArgument on duplicate members.
  static FamilyExpr explicit_family(std::vector<FiniteSet> members);
  static FamilyExpr union_of(FamilyExpr left, FamilyExpr right);

  const Variant& variant() const noexcept { return node_; }

  /// True when every subset of a member is a member (FiniteRank, Schreier and
  /// unions of those). Explicit families report false without inspection.
  bool is_builtin_hereditary() const;

  /// Largest member cardinality, or nullopt when unbounded (Schreier).
  std::optional<std::size_t> max_member_size() const;

 private:
  explicit FamilyExpr(Variant node) : node_(std::move(node)) {}
  Variant node_;
};

bool contains(const FamilyExpr& family, const FiniteSet& a);

struct AdmissibilityOptions {
  Index position_window = kDefaultPositionWindow;
};

/// Searches for A = {m_1 < ... < m_d} in the family with
/// m_1 <= min E_1 and max E_{i-1} < m_i <= min E_i. Returns the witness or nullopt.
std::optional<FiniteSet> is_admissible(const FamilyExpr& family, const SuccessiveBlocks& blocks,
                                       const AdmissibilityOptions& options = {});

/// Same search on bare (min, max) bounds; the bounds must already be successive.
std::optional<FiniteSet> admissibility_witness(const FamilyExpr& family, std::span<const BlockBounds> bounds,
                                               const AdmissibilityOptions& options = {});

/// Well-founded rank of the end-extension tree of the family.
OrdinalRank rank(const FamilyExpr& family);

struct TruncateOptions {
  std::size_t max_members = 1'000'000;
};

/// Explicit family of all members with max A <= n_max (the empty set when it is a member).
FamilyExpr truncate(const FamilyExpr& family, Index n_max, const TruncateOptions& options = {});

/// Literal syntax: `finite-rank:3`, `schreier`, `union(a,b)`, `explicit:[[1],[2,3]]`.
FamilyExpr parse_family(std::string_view literal);
std::string format_family(const FamilyExpr& family);

}  // namespace tsirelson
