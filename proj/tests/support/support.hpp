#pragma once

#include "paxp/decision_tree.hpp"
#include "paxp/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace paxp::test {

std::filesystem::path data_path(const std::string &name);

// The four-leaf running example over f1, f2 in {1..4} and f3 in {1,2}.
const DecisionTree &fixture_tree();

// Instance from 1-based domain values, e.g. fixture_instance({4, 4, 2}).
Instance fixture_instance(std::vector<int> values);

// Feature set from 1-based feature numbers: features(3, {1, 3}) = {f1, f3}.
FeatureSet features(std::size_t universe, std::initializer_list<std::size_t> one_based);

struct TreeShape {
  std::size_t min_features = 2;
  std::size_t max_features = 6;
  std::size_t max_domain = 4;
  std::size_t max_depth = 6;
  std::size_t class_count = 2;
  // Chance that a node below the root becomes a leaf early.
  double leaf_probability = 0.3;
  // Force one root-to-leaf chain down to exactly max_depth tests.
  bool force_max_depth = false;
  // Stop splitting once the tree holds this many nodes.
  std::size_t node_cap = 200;
};

// Random valid tree. At a node testing feature i with effective value set
// E (|E| >= 2), E is split into at least two groups and the values of D_i
// outside E are spread over those groups, so every edge covers a non-empty
// part of E and the node's edges partition D_i.
DecisionTree random_tree(std::mt19937_64 &rng, const TreeShape &shape = {});

// Every point of the feature space, row-major.
std::vector<std::vector<ValueId>> all_points(const DecisionTree &tree);

// Test-side oracle, written independently of the library: classify by
// walking the node list and count completions of v_X by nested loops.
ClassId oracle_classify(const DecisionTree &tree, const std::vector<ValueId> &point);
Precision oracle_precision(const DecisionTree &tree, const Instance &instance,
                           const FeatureSet &fixed);

// All subsets of `candidates` in mask order (bit b = candidates[b]).
std::vector<FeatureSet> all_subsets(const FeatureSet &candidates);

std::string show(const FeatureSet &set);

} // namespace paxp::test
