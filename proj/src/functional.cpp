#include "tsirelson/functional.hpp"

#include <algorithm>

#include "tsirelson/errors.hpp"

namespace tsirelson {

Functional Functional::leaf(int sign, Index position) {
  if (sign != 1 && sign != -1) throw InvalidArgument("leaf sign must be +1 or -1");
  if (position == 0) throw InvalidArgument("leaf positions start at 1");
  return Functional(Leaf{sign, position});
}

Functional Functional::node(std::vector<Functional> children) {
  if (children.empty()) throw InvalidArgument("a node needs at least one child");
  return Functional(Node{std::move(children)});
}

std::size_t Functional::depth() const {
  if (is_leaf()) return 0;
  std::size_t d = 0;
  for (const auto& c : children()) d = std::max(d, c.depth());
  return d + 1;
}

std::size_t Functional::node_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 1;
  for (const auto& c : children()) n += c.node_count();
  return n;
}

namespace {

void collect_positions(const Functional& f, std::vector<Index>& out) {
  if (f.is_leaf()) {
    out.push_back(f.as_leaf().position);
    return;
  }
  for (const auto& c : f.children()) collect_positions(c, out);
}

}  // namespace

FiniteSet Functional::support() const {
  std::vector<Index> positions;
  collect_positions(*this, positions);
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  return FiniteSet(std::move(positions));
}

Index Functional::min_position() const {
  if (is_leaf()) return as_leaf().position;
  Index m = children().front().min_position();
  for (const auto& c : children()) m = std::min(m, c.min_position());
  return m;
}

Index Functional::max_position() const {
  if (is_leaf()) return as_leaf().position;
  Index m = 0;
  for (const auto& c : children()) m = std::max(m, c.max_position());
  return m;
}

template <Scalar S>
S eval_functional(const Functional& f, const ThetaSpec& theta, const SparseVector<S>& x) {
  if (f.is_leaf()) {
    const auto& leaf = f.as_leaf();
    const S v = x[leaf.position];
    return leaf.sign > 0 ? v : S(-v);
  }
  S sum(0);
  for (const auto& c : f.children()) sum += eval_functional(c, theta, x);
  return theta.as<S>() * sum;
}

template double eval_functional<double>(const Functional&, const ThetaSpec&, const SparseVector<double>&);
template Rational eval_functional<Rational>(const Functional&, const ThetaSpec&, const SparseVector<Rational>&);

namespace {

std::size_t validate_at(const FamilyExpr& family, const Functional& f, const std::string& path) {
  if (f.is_leaf()) return 0;
  const auto& children = f.children();
  std::size_t depth = 0;
  std::vector<BlockBounds> bounds;
  bounds.reserve(children.size());
  for (std::size_t i = 0; i < children.size(); ++i) {
    depth = std::max(depth, validate_at(family, children[i], path + "/" + std::to_string(i)));
    bounds.push_back({children[i].min_position(), children[i].max_position()});
    if (i > 0 && bounds[i - 1].hi >= bounds[i].lo) {
      throw CertificateError(path, "children " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                       " are not successive");
    }
  }
  bool admissible = false;
  try {
    admissible = admissibility_witness(family, bounds).has_value();
  } catch (const InvalidArgument& e) {
    throw CertificateError(path, e.what());
  }
  if (!admissible) {
    throw CertificateError(path, "the " + std::to_string(children.size()) + " child supports are not admissible");
  }
  return depth + 1;
}

}  // namespace

std::size_t validate_functional(const FamilyExpr& family, const Functional& f) {
  return validate_at(family, f, "root");
}

nlohmann::json functional_to_json(const Functional& f) {
  if (f.is_leaf()) return {{"e", f.as_leaf().position}, {"sign", f.as_leaf().sign}};
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : f.children()) children.push_back(functional_to_json(c));
  return {{"theta_children", std::move(children)}};
}

Functional functional_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("functional JSON must be an object");
  try {
    if (j.contains("theta_children")) {
      const auto& arr = j.at("theta_children");
      if (!arr.is_array() || arr.empty()) throw ParseError("theta_children must be a nonempty array");
      std::vector<Functional> children;
      for (const auto& c : arr) children.push_back(functional_from_json(c));
      return Functional::node(std::move(children));
    }
    if (!j.contains("e") || !j.at("e").is_number_unsigned()) throw ParseError("leaf needs a positive 'e'");
    const int sign = j.contains("sign") ? j.at("sign").get<int>() : 1;
    return Functional::leaf(sign, j.at("e").get<Index>());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace tsirelson
