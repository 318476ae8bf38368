#include "paxp/explain.hpp"

#include "paxp/counting.hpp"
#include "paxp/error.hpp"

#include <algorithm>

namespace paxp {

std::string_view to_string(ExplanationKind kind) {
  switch (kind) {
  case ExplanationKind::AXp:
    return "AXp";
  case ExplanationKind::ApproxPAXp:
    return "ApproxPAXp";
  case ExplanationKind::MinPAXp:
    return "MinPAXp";
  }
  return "?";
}

namespace {

void require_path_permutation(const Path &path, const FeatureOrder &order) {
  FeatureSet seen(path.tested.universe());
  for (FeatureId f : order.features) {
    if (!path.tested.contains(f) || seen.contains(f)) {
      throw PreconditionError("feature order is not a permutation of the consistent path's features");
    }
    seen.insert(f);
  }
  if (seen != path.tested) {
    throw PreconditionError("feature order is not a permutation of the consistent path's features");
  }
}

// Sorts candidates by the precision of `base` without each of them.
void sort_by_loss(const CountTable &table, const Path &path, const FeatureSet &base,
                  std::vector<FeatureId> &candidates) {
  struct Keyed {
    FeatureId feature;
    Precision precision;
    std::size_t depth;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(candidates.size());
  for (FeatureId f : candidates) {
    keyed.push_back({f, table.precision(base.without(f)), path.first_test[f].value_or(0)});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b) {
    if (a.precision != b.precision) return a.precision > b.precision;
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.feature < b.feature;
  });
  for (std::size_t n = 0; n < keyed.size(); ++n) candidates[n] = keyed[n].feature;
}

// True when some literal of `path` over a feature in `fixed` rejects v.
bool blocked(const Path &path, const Instance &instance, const FeatureSet &fixed) {
  for (FeatureId i : fixed.members()) {
    if (path.literals[i] && !path.literals[i]->contains(instance.point[i])) return true;
  }
  return false;
}

} // namespace

FeatureOrder order_features(const DecisionTree &tree, const Instance &instance,
                            const FeatureSet &initial) {
  CountTable table(tree, instance);
  const Path &path = tree.consistent_path(instance.point);
  auto members = initial.members();
  std::vector<FeatureId> candidates(members.begin(), members.end());
  sort_by_loss(table, path, initial, candidates);
  return FeatureOrder{std::move(candidates)};
}

Explanation compute_axp(const DecisionTree &tree, const Instance &instance) {
  const Path &path = tree.consistent_path(instance.point);
  return compute_axp(tree, instance, order_features(tree, instance, path.tested));
}

Explanation compute_axp(const DecisionTree &tree, const Instance &instance,
                        const FeatureOrder &order) {
  const Path &path = tree.consistent_path(instance.point);
  require_path_permutation(path, order);
  PathSets sets = tree.path_sets(instance.prediction);

  FeatureSet fixed = path.tested;
  for (FeatureId j : order.features) {
    FeatureSet candidate = fixed.without(j);
    bool still_sufficient = std::all_of(sets.others.begin(), sets.others.end(), [&](std::size_t q) {
      return blocked(tree.path(q), instance, candidate);
    });
    if (still_sufficient) fixed = std::move(candidate);
  }

  Explanation out;
  out.kind = ExplanationKind::AXp;
  out.precision = conditional_precision(tree, instance, fixed);
  out.features = std::move(fixed);
  out.delta = Threshold(1, 1);
  out.is_weak_paxp = out.delta.admits(out.precision);
  out.subset_minimal = true;
  return out;
}

Explanation compute_approx_paxp(const DecisionTree &tree, const Instance &instance,
                                const Threshold &delta, const FeatureOrder &order,
                                ApproxOptions options) {
  const Path &path = tree.consistent_path(instance.point);
  require_path_permutation(path, order);
  CountTable table(tree, instance);

  // Precision is not monotone, so a feature kept in one pass may become
  // removable after later removals. Passes repeat over the survivors, in
  // the same order, until one removes nothing: at most |Phi| + 1 passes.
  FeatureSet fixed = path.tested;
  std::vector<FeatureId> survivors = order.features;
  for (bool removed = true; removed;) {
    removed = false;
    std::vector<FeatureId> pending = std::move(survivors);
    survivors.clear();
    while (!pending.empty()) {
      if (options.resort_each_step) sort_by_loss(table, path, fixed, pending);
      FeatureId j = pending.front();
      pending.erase(pending.begin());
      FeatureSet candidate = fixed.without(j);
      if (table.is_weak_paxp(candidate, delta)) {
        fixed = std::move(candidate);
        removed = true;
      } else {
        survivors.push_back(j);
      }
    }
  }

  Explanation out;
  out.kind = ExplanationKind::ApproxPAXp;
  out.precision = table.precision(fixed);
  out.features = std::move(fixed);
  out.delta = delta;
  out.is_weak_paxp = delta.admits(out.precision);
  return out;
}

Explanation compute_approx_paxp(const DecisionTree &tree, const Instance &instance,
                                const Threshold &delta) {
  const Path &path = tree.consistent_path(instance.point);
  return compute_approx_paxp(tree, instance, delta, order_features(tree, instance, path.tested));
}

bool is_deletion_minimal(const DecisionTree &tree, const Instance &instance,
                         const FeatureSet &fixed, const Threshold &delta) {
  CountTable table(tree, instance);
  if (!table.is_weak_paxp(fixed, delta)) {
    throw PreconditionError("feature set is not a WeakPAXp");
  }
  for (FeatureId j : fixed.members()) {
    if (table.is_weak_paxp(fixed.without(j), delta)) return false;
  }
  return true;
}

} // namespace paxp
