#include "paxp/counting.hpp"

#include "paxp/error.hpp"

namespace paxp {

namespace {

std::size_t factor(const DecisionTree &tree, const Path &path, FeatureId i, ValueId value,
                   bool is_fixed) {
  const auto &literal = path.literals[i];
  if (is_fixed) {
    if (literal) {
      return literal->contains(value) ? 1 : 0;
    }
    return 1;
  }
  return literal ? literal->size() : tree.space().domain_size(i);
}

} // namespace

std::size_t feature_factor(const DecisionTree &tree, std::size_t path, FeatureId feature,
                           const Instance &instance, const FeatureSet &fixed) {
  return factor(tree, tree.path(path), feature, instance.point[feature], fixed.contains(feature));
}

BigInt path_model_count(const DecisionTree &tree, std::size_t path, const Instance &instance,
                        const FeatureSet &fixed) {
  BigInt count = 1;
  for (FeatureId i = 0; i < tree.feature_count(); ++i) {
    std::size_t n = feature_factor(tree, path, i, instance, fixed);
    if (n == 0) {
      return 0;
    }
    count *= n;
  }
  return count;
}

Precision path_probability(const DecisionTree &tree, std::size_t path) {
  BigInt count = 1;
  const Path &p = tree.path(path);
  for (FeatureId i = 0; i < tree.feature_count(); ++i) {
    count *= factor(tree, p, i, 0, false);
  }
  return Precision(count, tree.space().total_points());
}

Precision class_probability(const DecisionTree &tree, ClassId c) {
  PathSets sets = tree.path_sets(c);
  Precision total(0, 1);
  for (std::size_t k : sets.matching) total = total + path_probability(tree, k);
  return total;
}

Precision conditional_precision(const DecisionTree &tree, const Instance &instance,
                                const FeatureSet &fixed) {
  BigInt favourable = 0;
  BigInt total = 0;
  for (const Path &p : tree.paths()) {
    BigInt count = path_model_count(tree, p.index, instance, fixed);
    if (p.label == instance.prediction) favourable += count;
    total += count;
  }
  return Precision(favourable, total);
}

bool is_weak_paxp(const DecisionTree &tree, const Instance &instance, const FeatureSet &fixed,
                  const Threshold &delta) {
  return delta.admits(conditional_precision(tree, instance, fixed));
}

CountTable::CountTable(const DecisionTree &tree, const Instance &instance)
    : tree_(&tree), instance_(&instance), feature_count_(tree.feature_count()) {
  const std::size_t paths = tree.paths().size();
  fixed_.resize(paths * feature_count_);
  universal_.resize(paths * feature_count_);
  matching_.resize(paths);
  for (const Path &p : tree.paths()) {
    matching_[p.index] = p.label == instance.prediction;
    for (FeatureId i = 0; i < feature_count_; ++i) {
      fixed_[p.index * feature_count_ + i] = factor(tree, p, i, instance.point[i], true);
      universal_[p.index * feature_count_ + i] = factor(tree, p, i, instance.point[i], false);
    }
  }
}

BigInt CountTable::model_count(std::size_t path, const FeatureSet &fixed) const {
  BigInt count = 1;
  for (FeatureId i = 0; i < feature_count_; ++i) {
    std::size_t n = fixed.contains(i) ? fixed_factor(path, i) : universal_factor(path, i);
    if (n == 0) {
      return 0;
    }
    count *= n;
  }
  return count;
}

Precision CountTable::precision(const FeatureSet &fixed) const {
  BigInt favourable = 0;
  BigInt total = 0;
  for (std::size_t k = 0; k < path_count(); ++k) {
    BigInt count = model_count(k, fixed);
    if (matching_[k]) favourable += count;
    total += count;
  }
  return Precision(favourable, total);
}

bool CountTable::is_weak_paxp(const FeatureSet &fixed, const Threshold &delta) const {
  return delta.admits(precision(fixed));
}

} // namespace paxp
