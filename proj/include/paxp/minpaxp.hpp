#pragma once

#include "paxp/counting.hpp"
#include "paxp/explain.hpp"
#include "paxp/oracle.hpp"
#include "paxp/smt/solver_bridge.hpp"

#include <cstddef>

namespace paxp {

// Size-bounded WeakPAXp queries and minimum-size PAXp search for one
// instance. The search space is the features of the consistent path; the
// rest stay universal.
class MinPaxpSolver {
public:
  MinPaxpSolver(const DecisionTree &tree, const Instance &instance,
                Backend backend = Backend::Builtin, smt::SolverBridgeConfig solver = {});

  // Is there a WeakPAXp fixing at most `bound` features? `bound` must not
  // exceed the consistent path's feature count.
  OracleAnswer exists_weak_paxp_of_size(const Threshold &delta, std::size_t bound);

  // Binary search on the bound, keeping sat(hi) and not sat(lo - 1). The
  // result has minimum cardinality and is therefore a PAXp. With the
  // builtin backend the witness is the lexicographically smallest one.
  Explanation compute_min_paxp(const Threshold &delta);

  // Subset-minimality of a WeakPAXp: no proper subset is a WeakPAXp.
  // Throws PreconditionError when `fixed` is not a WeakPAXp.
  bool is_paxp(const FeatureSet &fixed, const Threshold &delta);

  std::size_t oracle_calls() const { return oracle_calls_; }

private:
  OracleAnswer external(const Threshold &delta, const smt::EncodingOptions &options);

  const DecisionTree *tree_;
  const Instance *instance_;
  Backend backend_;
  smt::SolverBridgeConfig solver_;
  CountTable table_;
  FeatureSet path_features_;
  std::size_t oracle_calls_ = 0;
};

OracleAnswer exists_weak_paxp_of_size(const DecisionTree &tree, const Instance &instance,
                                      const Threshold &delta, std::size_t bound,
                                      Backend backend = Backend::Builtin,
                                      const smt::SolverBridgeConfig &solver = {});

Explanation compute_min_paxp(const DecisionTree &tree, const Instance &instance,
                             const Threshold &delta, Backend backend = Backend::Builtin,
                             const smt::SolverBridgeConfig &solver = {});

bool is_paxp(const DecisionTree &tree, const Instance &instance, const FeatureSet &fixed,
             const Threshold &delta, Backend backend = Backend::Builtin,
             const smt::SolverBridgeConfig &solver = {});

} // namespace paxp
