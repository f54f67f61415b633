#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tsirelson/family.hpp"
#include "tsirelson/finite_set.hpp"
#include "tsirelson/scalar.hpp"
#include "tsirelson/sparse_vector.hpp"
#include "tsirelson/theta.hpp"

namespace tsirelson {

/// A norming functional in tree form: a leaf is ±e_k^*, a node is
/// theta * (sum of its children).
class Functional {
 public:
  struct Leaf {
    int sign;  // +1 or -1
    Index position;
    friend bool operator==(const Leaf&, const Leaf&) = default;
  };
  struct Node {
    std::vector<Functional> children;
    friend bool operator==(const Node&, const Node&) = default;
  };

  static Functional leaf(int sign, Index position);
  static Functional node(std::vector<Functional> children);

  bool is_leaf() const noexcept { return std::holds_alternative<Leaf>(tree_); }
  const Leaf& as_leaf() const { return std::get<Leaf>(tree_); }
  const std::vector<Functional>& children() const { return std::get<Node>(tree_).children; }

  /// 0 for a leaf, 1 + max child depth for a node.
  std::size_t depth() const;
  std::size_t node_count() const;
  /// Positions of all leaves.
  FiniteSet support() const;
  Index min_position() const;
  Index max_position() const;

  friend bool operator==(const Functional&, const Functional&) = default;

 private:
  explicit Functional(std::variant<Leaf, Node> tree) : tree_(std::move(tree)) {}
  std::variant<Leaf, Node> tree_;
};

/// <f, x>; linear in x.
template <Scalar S>
S eval_functional(const Functional& f, const ThetaSpec& theta, const SparseVector<S>& x);

/// Checks that every node has successive, admissible children and returns the
/// tree depth s (so f is in K_s). Throws CertificateError naming the node path
/// ("root", "root/1/0", ...).
std::size_t validate_functional(const FamilyExpr& family, const Functional& f);

/// {"e": k, "sign": 1} for leaves, {"theta_children": [...]} for nodes.
nlohmann::json functional_to_json(const Functional& f);
/// Throws ParseError on a malformed tree.
Functional functional_from_json(const nlohmann::json& j);

}  // namespace tsirelson
