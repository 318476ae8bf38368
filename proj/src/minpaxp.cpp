#include "paxp/minpaxp.hpp"

#include "paxp/error.hpp"
#include "paxp/subset_oracle.hpp"

namespace paxp {

std::string_view to_string(Backend backend) {
  switch (backend) {
  case Backend::Builtin:
    return "builtin";
  case Backend::SmtMult:
    return "smt-mult";
  case Backend::SmtAdd:
    return "smt-add";
  }
  return "?";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "builtin") return Backend::Builtin;
  if (name == "smt-mult") return Backend::SmtMult;
  if (name == "smt-add") return Backend::SmtAdd;
  return std::nullopt;
}

MinPaxpSolver::MinPaxpSolver(const DecisionTree &tree, const Instance &instance, Backend backend,
                             smt::SolverBridgeConfig solver)
    : tree_(&tree), instance_(&instance), backend_(backend), solver_(std::move(solver)),
      table_(tree, instance), path_features_(tree.consistent_path(instance.point).tested) {}

OracleAnswer MinPaxpSolver::external(const Threshold &delta, const smt::EncodingOptions &options) {
  smt::Encoding encoding =
      backend_ == Backend::SmtMult ? smt::Encoding::Multiplication : smt::Encoding::Addition;
  smt::EncodingProblem problem = smt::emit_encoding(encoding, *tree_, *instance_, delta, options);
  return smt::solve_external(*tree_, *instance_, delta, problem, options, solver_);
}

OracleAnswer MinPaxpSolver::exists_weak_paxp_of_size(const Threshold &delta, std::size_t bound) {
  if (bound > path_features_.size()) {
    throw PreconditionError("size bound exceeds the consistent path's feature count");
  }
  ++oracle_calls_;
  if (backend_ == Backend::Builtin) {
    SubsetOracle oracle(table_, path_features_);
    auto witness = oracle.find(delta, bound);
    if (!witness) return OracleAnswer{false, std::nullopt};
    if (!table_.is_weak_paxp(*witness, delta)) {
      throw BackendError("builtin witness failed revalidation");
    }
    return OracleAnswer{true, std::move(witness)};
  }
  return external(delta, {bound, std::nullopt});
}

Explanation MinPaxpSolver::compute_min_paxp(const Threshold &delta) {
  // sat(|Phi|) holds without asking: the whole path has precision 1.
  std::size_t lo = 0;
  std::size_t hi = path_features_.size();
  FeatureSet best = path_features_;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    OracleAnswer answer = exists_weak_paxp_of_size(delta, mid);
    if (answer.satisfiable) {
      best = std::move(*answer.witness);
      hi = best.size();
    } else {
      lo = mid + 1;
    }
  }

  Explanation out;
  out.kind = ExplanationKind::MinPAXp;
  out.precision = table_.precision(best);
  out.features = std::move(best);
  out.delta = delta;
  out.is_weak_paxp = delta.admits(out.precision);
  out.subset_minimal = true;
  return out;
}

bool MinPaxpSolver::is_paxp(const FeatureSet &fixed, const Threshold &delta) {
  if (!table_.is_weak_paxp(fixed, delta)) {
    throw PreconditionError("feature set is not a WeakPAXp");
  }
  if (fixed.empty()) return true;
  ++oracle_calls_;
  if (backend_ == Backend::Builtin) {
    SubsetOracle oracle(table_, fixed);
    return !oracle.find(delta, fixed.size() - 1).has_value();
  }
  return !external(delta, {std::nullopt, fixed}).satisfiable;
}

OracleAnswer exists_weak_paxp_of_size(const DecisionTree &tree, const Instance &instance,
                                      const Threshold &delta, std::size_t bound, Backend backend,
                                      const smt::SolverBridgeConfig &solver) {
  return MinPaxpSolver(tree, instance, backend, solver).exists_weak_paxp_of_size(delta, bound);
}

Explanation compute_min_paxp(const DecisionTree &tree, const Instance &instance,
                             const Threshold &delta, Backend backend,
                             const smt::SolverBridgeConfig &solver) {
  return MinPaxpSolver(tree, instance, backend, solver).compute_min_paxp(delta);
}

bool is_paxp(const DecisionTree &tree, const Instance &instance, const FeatureSet &fixed,
             const Threshold &delta, Backend backend, const smt::SolverBridgeConfig &solver) {
  return MinPaxpSolver(tree, instance, backend, solver).is_paxp(fixed, delta);
}

} // namespace paxp
