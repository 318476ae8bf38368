#pragma once

#include "paxp/decision_tree.hpp"
#include "paxp/rational.hpp"

#include <cstdint>
#include <vector>

namespace paxp {

// Ground truth by enumerating feature space and classifying every point
// with a plain tree walk. Shares nothing with the path-counting code.
struct EnumerationBudget {
  std::uint64_t max_points = 1'000'000;

  // Throws BudgetExceeded when |F| is larger than the budget.
  void check(const DecisionTree &tree) const;
  bool admits(const DecisionTree &tree) const;
};

// Prob(kappa(x) = c | x_X = v_X) by counting the completions of v_X.
Precision bf_conditional_precision(const DecisionTree &tree, const Instance &instance,
                                   const FeatureSet &fixed, EnumerationBudget budget = {});

// Every subset of the consistent path's features that is a WeakPAXp and is
// minimal under inclusion, sorted by (size, lexicographic).
std::vector<FeatureSet> bf_all_paxps(const DecisionTree &tree, const Instance &instance,
                                     const Threshold &delta, EnumerationBudget budget = {});

// Smallest cardinality of a WeakPAXp within the consistent path.
std::size_t bf_min_size(const DecisionTree &tree, const Instance &instance, const Threshold &delta,
                        EnumerationBudget budget = {});

} // namespace paxp
