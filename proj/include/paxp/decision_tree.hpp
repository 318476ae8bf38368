#pragma once

#include "paxp/index_set.hpp"
#include "paxp/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paxp {

using FeatureId = std::size_t;
using ValueId = std::size_t;
using ClassId = std::size_t;
using NodeId = std::int64_t;

// One feature and its finite domain. Domain values are interned: value id
// l is the l-th label. Numeric domains keep the canonical decimal text of
// each integer as the label.
struct FeatureSpec {
  std::string name;
  std::vector<std::string> labels;
  bool numeric = true;

  std::size_t domain_size() const { return labels.size(); }
  std::optional<ValueId> find(std::string_view text) const;
};

class FeatureSpace {
public:
  FeatureSpace() = default;
  explicit FeatureSpace(std::vector<FeatureSpec> features);

  std::size_t size() const { return features_.size(); }
  const FeatureSpec &operator[](FeatureId i) const { return features_[i]; }
  const std::vector<FeatureSpec> &features() const { return features_; }
  std::size_t domain_size(FeatureId i) const { return features_[i].domain_size(); }
  std::optional<FeatureId> find(std::string_view name) const;

  // |F|: product of all domain sizes.
  BigInt total_points() const;

private:
  std::vector<FeatureSpec> features_;
};

struct Edge {
  ValueSet values;
  std::size_t child = 0; // index into DecisionTree::nodes()
};

struct Node {
  NodeId id = 0;
  std::optional<FeatureId> feature; // set on internal nodes
  std::vector<Edge> edges;
  std::optional<ClassId> label; // set on leaves

  bool is_leaf() const { return label.has_value(); }
};

// Root-to-leaf path R_k with its folded literal map.
struct Path {
  std::size_t index = 0;
  std::vector<NodeId> nodes;
  // Node index of each step, parallel to `nodes`.
  std::vector<std::size_t> node_indices;
  ClassId label = 0;
  // Effective value set per tested feature (intersection of every test on
  // the path); nullopt for untested features.
  std::vector<std::optional<ValueSet>> literals;
  FeatureSet tested;
  // Position along the path (root = 0) of the first node testing each
  // feature; nullopt for untested features.
  std::vector<std::optional<std::size_t>> first_test;

  bool tests(FeatureId i) const { return literals[i].has_value(); }
  FeatureSet untested() const { return tested.complement(); }
  bool consistent_with(std::span<const ValueId> point) const;
  std::size_t depth() const { return nodes.size() - 1; }
};

struct PathSets {
  std::vector<std::size_t> matching; // P: paths predicting c
  std::vector<std::size_t> others;   // Q
};

// Validated, immutable decision tree over a finite discrete feature space.
class DecisionTree {
public:
  // Validates every structural invariant; throws ValidationError naming the
  // violated invariant and node id.
  DecisionTree(FeatureSpace space, std::vector<std::string> classes, std::vector<Node> nodes,
               NodeId root);

  const FeatureSpace &space() const { return space_; }
  std::size_t feature_count() const { return space_.size(); }
  const std::vector<std::string> &classes() const { return classes_; }
  std::optional<ClassId> find_class(std::string_view label) const;
  const std::vector<Node> &nodes() const { return nodes_; }
  std::size_t root() const { return root_; }
  const std::vector<Path> &paths() const { return paths_; }
  const Path &path(std::size_t k) const { return paths_[k]; }

  // The unique path whose literals the point satisfies.
  const Path &consistent_path(std::span<const ValueId> point) const;
  // Walks the node edges directly; does not consult the path table.
  ClassId classify(std::span<const ValueId> point) const;
  PathSets path_sets(ClassId c) const;

  bool in_domain(std::span<const ValueId> point) const;

private:
  void validate_and_index(NodeId root);

  FeatureSpace space_;
  std::vector<std::string> classes_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  std::vector<Path> paths_;
};

// A point v plus its predicted class c.
struct Instance {
  std::vector<ValueId> point;
  ClassId prediction = 0;
};

// Classifies the point; when `expected` is given and disagrees with the
// tree, throws ValidationError.
Instance make_instance(const DecisionTree &tree, std::vector<ValueId> point,
                       std::optional<ClassId> expected = std::nullopt);

} // namespace paxp
