#include "paxp/brute_force.hpp"

#include "paxp/error.hpp"

#include <algorithm>
#include <bit>

namespace paxp {

namespace {

constexpr std::size_t kMaxPathFeatures = 20;

struct PrecisionTable {
  std::vector<FeatureId> candidates;
  std::vector<Precision> by_mask; // indexed by candidate bitmask
};

PrecisionTable tabulate(const DecisionTree &tree, const Instance &instance,
                        EnumerationBudget budget) {
  budget.check(tree);
  PrecisionTable table;
  table.candidates = tree.consistent_path(instance.point).tested.members();
  if (table.candidates.size() > kMaxPathFeatures) {
    throw BudgetExceeded("consistent path tests more than 20 features");
  }
  const std::size_t n = table.candidates.size();
  table.by_mask.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    FeatureSet fixed(tree.feature_count());
    for (std::size_t pos = 0; pos < n; ++pos) {
      if ((mask >> pos) & 1U) fixed.insert(table.candidates[pos]);
    }
    table.by_mask.push_back(bf_conditional_precision(tree, instance, fixed, budget));
  }
  return table;
}

} // namespace

void EnumerationBudget::check(const DecisionTree &tree) const {
  if (!admits(tree)) {
    throw BudgetExceeded("feature space of " + tree.space().total_points().str() +
                         " points exceeds the enumeration budget of " + std::to_string(max_points));
  }
}

bool EnumerationBudget::admits(const DecisionTree &tree) const {
  return tree.space().total_points() <= max_points;
}

Precision bf_conditional_precision(const DecisionTree &tree, const Instance &instance,
                                   const FeatureSet &fixed, EnumerationBudget budget) {
  budget.check(tree);
  const std::size_t m = tree.feature_count();
  std::vector<FeatureId> free_features;
  for (FeatureId i = 0; i < m; ++i) {
    if (!fixed.contains(i)) free_features.push_back(i);
  }

  // Odometer over the free features, row-major (last feature fastest).
  std::vector<ValueId> point = instance.point;
  for (FeatureId i : free_features) point[i] = 0;
  std::uint64_t favourable = 0;
  std::uint64_t total = 0;
  for (;;) {
    ++total;
    if (tree.classify(point) == instance.prediction) ++favourable;
    std::size_t digit = free_features.size();
    while (digit > 0) {
      FeatureId f = free_features[digit - 1];
      if (++point[f] < tree.space().domain_size(f)) break;
      point[f] = 0;
      --digit;
    }
    if (digit == 0) break;
  }
  return Precision(favourable, total);
}

std::vector<FeatureSet> bf_all_paxps(const DecisionTree &tree, const Instance &instance,
                                     const Threshold &delta, EnumerationBudget budget) {
  PrecisionTable table = tabulate(tree, instance, budget);
  const std::size_t n = table.candidates.size();
  std::vector<std::uint64_t> weak;
  for (std::uint64_t mask = 0; mask < table.by_mask.size(); ++mask) {
    if (delta.admits(table.by_mask[mask])) weak.push_back(mask);
  }
  std::vector<FeatureSet> out;
  for (std::uint64_t mask : weak) {
    bool minimal = std::none_of(weak.begin(), weak.end(), [&](std::uint64_t other) {
      return other != mask && (other & ~mask) == 0;
    });
    if (!minimal) continue;
    FeatureSet set(tree.feature_count());
    for (std::size_t pos = 0; pos < n; ++pos) {
      if ((mask >> pos) & 1U) set.insert(table.candidates[pos]);
    }
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end(), [](const FeatureSet &a, const FeatureSet &b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
  });
  return out;
}

std::size_t bf_min_size(const DecisionTree &tree, const Instance &instance, const Threshold &delta,
                        EnumerationBudget budget) {
  PrecisionTable table = tabulate(tree, instance, budget);
  std::size_t best = table.candidates.size();
  for (std::uint64_t mask = 0; mask < table.by_mask.size(); ++mask) {
    if (delta.admits(table.by_mask[mask])) {
      best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
    }
  }
  return best;
}

} // namespace paxp
