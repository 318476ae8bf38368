#pragma once

#include "paxp/decision_tree.hpp"
#include "paxp/rational.hpp"

#include <cstddef>
#include <vector>

namespace paxp {

// Number of values of feature i that path k admits, given the instance and
// the set of fixed features:
//   fixed, tested, v_i outside E_i  -> 0
//   fixed, tested, v_i inside E_i   -> 1
//   fixed, untested                 -> 1
//   universal, tested               -> |E_i|
//   universal, untested             -> |D_i|
std::size_t feature_factor(const DecisionTree &tree, std::size_t path, FeatureId feature,
                           const Instance &instance, const FeatureSet &fixed);

// #(R_k; v, X): product of feature_factor over every feature.
BigInt path_model_count(const DecisionTree &tree, std::size_t path, const Instance &instance,
                        const FeatureSet &fixed);

// Unconditioned share of feature space covered by path k.
Precision path_probability(const DecisionTree &tree, std::size_t path);

// Prob(kappa(x) = c) over the uniform feature space.
Precision class_probability(const DecisionTree &tree, ClassId c);

// Prob(kappa(x) = c | x_X = v_X) as (matching-path models) / (all models).
// Counts are left unreduced.
Precision conditional_precision(const DecisionTree &tree, const Instance &instance,
                                const FeatureSet &fixed);

bool is_weak_paxp(const DecisionTree &tree, const Instance &instance, const FeatureSet &fixed,
                  const Threshold &delta);

// Both candidate factors (fixed and universal) of every path and feature
// for one instance, so repeated precision queries skip the rule dispatch.
class CountTable {
public:
  CountTable(const DecisionTree &tree, const Instance &instance);

  const DecisionTree &tree() const { return *tree_; }
  const Instance &instance() const { return *instance_; }
  std::size_t path_count() const { return matching_.size(); }
  std::size_t feature_count() const { return feature_count_; }

  std::size_t fixed_factor(std::size_t path, FeatureId i) const {
    return fixed_[path * feature_count_ + i];
  }
  std::size_t universal_factor(std::size_t path, FeatureId i) const {
    return universal_[path * feature_count_ + i];
  }
  bool matching(std::size_t path) const { return matching_[path]; }

  BigInt model_count(std::size_t path, const FeatureSet &fixed) const;
  Precision precision(const FeatureSet &fixed) const;
  bool is_weak_paxp(const FeatureSet &fixed, const Threshold &delta) const;

private:
  const DecisionTree *tree_;
  const Instance *instance_;
  std::size_t feature_count_;
  std::vector<std::size_t> fixed_;
  std::vector<std::size_t> universal_;
  std::vector<bool> matching_;
};

} // namespace paxp
