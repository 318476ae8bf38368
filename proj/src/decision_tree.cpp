#include "paxp/decision_tree.hpp"

#include "paxp/error.hpp"

#include <charconv>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace paxp {

namespace {

std::string node_ref(NodeId id) { return "node " + std::to_string(id); }

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

} // namespace

std::optional<ValueId> FeatureSpec::find(std::string_view text) const {
  if (numeric) {
    auto value = parse_int(text);
    if (!value) {
      return std::nullopt;
    }
    std::string canonical = std::to_string(*value);
    for (ValueId l = 0; l < labels.size(); ++l) {
      if (labels[l] == canonical) return l;
    }
    return std::nullopt;
  }
  for (ValueId l = 0; l < labels.size(); ++l) {
    if (labels[l] == text) return l;
  }
  return std::nullopt;
}

FeatureSpace::FeatureSpace(std::vector<FeatureSpec> features) : features_(std::move(features)) {
  std::set<std::string> names;
  for (const FeatureSpec &f : features_) {
    if (!names.insert(f.name).second) {
      throw ValidationError("duplicate feature name '" + f.name + "'");
    }
    if (f.labels.empty()) {
      throw ValidationError("feature '" + f.name + "' has an empty domain");
    }
    std::set<std::string> seen(f.labels.begin(), f.labels.end());
    if (seen.size() != f.labels.size()) {
      throw ValidationError("feature '" + f.name + "' has duplicate domain values");
    }
  }
}

std::optional<FeatureId> FeatureSpace::find(std::string_view name) const {
  for (FeatureId i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  return std::nullopt;
}

BigInt FeatureSpace::total_points() const {
  BigInt total = 1;
  for (const FeatureSpec &f : features_) total *= f.domain_size();
  return total;
}

bool Path::consistent_with(std::span<const ValueId> point) const {
  for (FeatureId i = 0; i < literals.size(); ++i) {
    if (literals[i] && !literals[i]->contains(point[i])) return false;
  }
  return true;
}

DecisionTree::DecisionTree(FeatureSpace space, std::vector<std::string> classes,
                           std::vector<Node> nodes, NodeId root)
    : space_(std::move(space)), classes_(std::move(classes)), nodes_(std::move(nodes)) {
  validate_and_index(root);
}

std::optional<ClassId> DecisionTree::find_class(std::string_view label) const {
  for (ClassId c = 0; c < classes_.size(); ++c) {
    if (classes_[c] == label) return c;
  }
  return std::nullopt;
}

void DecisionTree::validate_and_index(NodeId root) {
  if (classes_.size() < 2) {
    throw ValidationError("class set must contain at least two classes");
  }
  if (std::set<std::string>(classes_.begin(), classes_.end()).size() != classes_.size()) {
    throw ValidationError("duplicate class label");
  }
  if (nodes_.empty()) {
    throw ValidationError("tree has no nodes");
  }

  std::unordered_map<NodeId, std::size_t> index_of;
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (!index_of.emplace(nodes_[n].id, n).second) {
      throw ValidationError("duplicate node id " + std::to_string(nodes_[n].id));
    }
  }
  auto root_it = index_of.find(root);
  if (root_it == index_of.end()) {
    throw ValidationError("root id " + std::to_string(root) + " does not name a node");
  }
  root_ = root_it->second;

  std::vector<std::size_t> incoming(nodes_.size(), 0);
  for (const Node &node : nodes_) {
    if (node.is_leaf()) {
      if (node.feature || !node.edges.empty()) {
        throw ValidationError(node_ref(node.id) + " is both a leaf and a test");
      }
      if (*node.label >= classes_.size()) {
        throw ValidationError("leaf class not in class set at " + node_ref(node.id));
      }
      continue;
    }
    if (!node.feature || *node.feature >= space_.size()) {
      throw ValidationError("unknown feature at " + node_ref(node.id));
    }
    if (node.edges.empty()) {
      throw ValidationError(node_ref(node.id) + " has no outgoing edges");
    }
    std::size_t domain = space_.domain_size(*node.feature);
    ValueSet covered(domain);
    for (const Edge &edge : node.edges) {
      if (edge.values.universe() != domain) {
        throw ValidationError("edge values outside domain at " + node_ref(node.id));
      }
      if (edge.values.empty()) {
        throw ValidationError("empty edge at " + node_ref(node.id));
      }
      if (!covered.disjoint(edge.values)) {
        throw ValidationError("edges overlap at " + node_ref(node.id));
      }
      covered |= edge.values;
      if (edge.child >= nodes_.size()) {
        throw ValidationError("unknown child at " + node_ref(node.id));
      }
      ++incoming[edge.child];
    }
    if (covered.size() != domain) {
      throw ValidationError("edges do not cover domain at " + node_ref(node.id));
    }
  }

  if (incoming[root_] != 0) {
    throw ValidationError("root " + node_ref(nodes_[root_].id) + " has an incoming edge");
  }
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (n != root_ && incoming[n] != 1) {
      throw ValidationError(node_ref(nodes_[n].id) + " must have exactly one incoming edge, has " +
                            std::to_string(incoming[n]));
    }
  }

  // Depth-first path enumeration in edge order. Every non-root node has one
  // parent, so a node seen twice means a cycle through the root's component.
  std::vector<bool> visited(nodes_.size(), false);
  struct Frame {
    std::size_t node;
    std::size_t next_edge;
    std::vector<std::optional<ValueSet>> literals;
  };
  std::vector<Frame> stack;
  stack.push_back({root_, 0, std::vector<std::optional<ValueSet>>(space_.size())});
  visited[root_] = true;
  std::vector<std::size_t> trail{root_};
  std::set<ClassId> leaf_classes;

  while (!stack.empty()) {
    Frame &top = stack.back();
    const Node &node = nodes_[top.node];
    if (node.is_leaf()) {
      Path path;
      path.index = paths_.size();
      path.node_indices = trail;
      for (std::size_t n : trail) path.nodes.push_back(nodes_[n].id);
      path.label = *node.label;
      path.literals = top.literals;
      path.tested = FeatureSet(space_.size());
      for (FeatureId i = 0; i < space_.size(); ++i) {
        if (path.literals[i]) path.tested.insert(i);
      }
      path.first_test.assign(space_.size(), std::nullopt);
      for (std::size_t pos = 0; pos + 1 < trail.size(); ++pos) {
        FeatureId f = *nodes_[trail[pos]].feature;
        if (!path.first_test[f]) path.first_test[f] = pos;
      }
      paths_.push_back(std::move(path));
      leaf_classes.insert(*node.label);
      stack.pop_back();
      trail.pop_back();
      continue;
    }
    if (top.next_edge == node.edges.size()) {
      stack.pop_back();
      trail.pop_back();
      continue;
    }
    const Edge &edge = node.edges[top.next_edge++];
    if (visited[edge.child]) {
      throw ValidationError("cycle through " + node_ref(nodes_[edge.child].id));
    }
    visited[edge.child] = true;
    FeatureId f = *node.feature;
    auto literals = top.literals;
    literals[f] = literals[f] ? literals[f]->intersect(edge.values) : edge.values;
    if (literals[f]->empty()) {
      throw ValidationError("unreachable path through " + node_ref(nodes_[edge.child].id) +
                            ": empty value set for feature '" + space_[f].name + "'");
    }
    stack.push_back({edge.child, 0, std::move(literals)});
    trail.push_back(edge.child);
  }

  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (!visited[n]) {
      throw ValidationError(node_ref(nodes_[n].id) + " is unreachable from the root");
    }
  }
  if (leaf_classes.size() < 2) {
    throw ValidationError("classifier is constant");
  }
}

const Path &DecisionTree::consistent_path(std::span<const ValueId> point) const {
  for (const Path &p : paths_) {
    if (p.consistent_with(point)) return p;
  }
  throw PreconditionError("point is not consistent with any path");
}

ClassId DecisionTree::classify(std::span<const ValueId> point) const {
  std::size_t n = root_;
  while (!nodes_[n].is_leaf()) {
    const Node &node = nodes_[n];
    ValueId value = point[*node.feature];
    for (const Edge &edge : node.edges) {
      if (edge.values.contains(value)) {
        n = edge.child;
        break;
      }
    }
  }
  return *nodes_[n].label;
}

PathSets DecisionTree::path_sets(ClassId c) const {
  if (c >= classes_.size()) {
    throw PreconditionError("unknown class id " + std::to_string(c));
  }
  PathSets sets;
  for (const Path &p : paths_) {
    (p.label == c ? sets.matching : sets.others).push_back(p.index);
  }
  return sets;
}

bool DecisionTree::in_domain(std::span<const ValueId> point) const {
  if (point.size() != space_.size()) return false;
  for (FeatureId i = 0; i < point.size(); ++i) {
    if (point[i] >= space_.domain_size(i)) return false;
  }
  return true;
}

Instance make_instance(const DecisionTree &tree, std::vector<ValueId> point,
                       std::optional<ClassId> expected) {
  if (!tree.in_domain(point)) {
    throw ValidationError("instance values outside feature domains");
  }
  ClassId predicted = tree.consistent_path(point).label;
  if (expected && *expected != predicted) {
    throw ValidationError("instance class '" + tree.classes()[*expected] +
                          "' does not match tree prediction '" + tree.classes()[predicted] + "'");
  }
  return Instance{std::move(point), predicted};
}

} // namespace paxp
