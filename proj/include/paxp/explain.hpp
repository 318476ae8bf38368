#pragma once

#include "paxp/decision_tree.hpp"
#include "paxp/rational.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace paxp {

enum class ExplanationKind { AXp, ApproxPAXp, MinPAXp };

std::string_view to_string(ExplanationKind kind);

struct Explanation {
  ExplanationKind kind = ExplanationKind::AXp;
  FeatureSet features;
  Precision precision;
  Threshold delta{1, 1};
  bool is_weak_paxp = false;
  // nullopt until certified (ApproxPAXp may not be subset-minimal).
  std::optional<bool> subset_minimal;
};

// Deletion order over the features of the consistent path.
struct FeatureOrder {
  std::vector<FeatureId> features;
};

// Least important first: sorted by precision of initial \ {j}, highest
// first. Ties go to the feature whose first test sits deeper on the
// consistent path, then to the lower index.
FeatureOrder order_features(const DecisionTree &tree, const Instance &instance,
                            const FeatureSet &initial);

// Subset-minimal sufficient set (precision exactly 1). A feature is dropped
// when every path predicting another class stays inconsistent without it.
// The default order is order_features over the consistent path.
Explanation compute_axp(const DecisionTree &tree, const Instance &instance);
Explanation compute_axp(const DecisionTree &tree, const Instance &instance,
                        const FeatureOrder &order);

struct ApproxOptions {
  // Recompute precision losses of the remaining candidates after every
  // removal instead of using the initial order throughout.
  bool resort_each_step = false;
};

// Greedy deletion from the consistent path's features in the given order,
// repeated until no single removal keeps the set a WeakPAXp. The result is
// deletion-minimal but not necessarily subset-minimal; subset_minimal is
// left unset.
Explanation compute_approx_paxp(const DecisionTree &tree, const Instance &instance,
                                const Threshold &delta, const FeatureOrder &order,
                                ApproxOptions options = {});
Explanation compute_approx_paxp(const DecisionTree &tree, const Instance &instance,
                                const Threshold &delta);

// True iff no single-feature removal keeps the set a WeakPAXp. Throws
// PreconditionError when `fixed` is not a WeakPAXp.
bool is_deletion_minimal(const DecisionTree &tree, const Instance &instance,
                         const FeatureSet &fixed, const Threshold &delta);

} // namespace paxp
