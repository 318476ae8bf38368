#pragma once

#include "paxp/decision_tree.hpp"
#include "paxp/oracle.hpp"
#include "paxp/rational.hpp"
#include "paxp/smt/encoding.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace paxp::smt {

// How to reach an external SMT-LIB2 solver. The solver is run as
//   <executable> <arguments...> <problem file>
// and must print sat/unsat followed by a (get-model) response.
struct SolverBridgeConfig {
  static constexpr const char *environment_variable = "PAXP_SMT_SOLVER";

  std::string executable;
  std::vector<std::string> arguments;
  std::chrono::milliseconds time_limit{std::chrono::minutes(10)};

  // Executable from PAXP_SMT_SOLVER; empty when unset.
  static SolverBridgeConfig from_environment();
  bool configured() const { return !executable.empty(); }
};

// Resolves a bare program name against PATH; absolute or relative paths
// are checked directly.
std::optional<std::string> locate_executable(const std::string &name);

enum class SolverStatus { Sat, Unsat };

struct SolverOutcome {
  SolverStatus status = SolverStatus::Unsat;
  // Value of u_j per feature; empty unless sat.
  std::vector<bool> universal;
  std::string output;
};

// Writes the problem to a temporary file, runs the solver under the time
// limit and parses its answer. Missing executable, timeout, "unknown",
// crashes and unparseable models all throw BackendError.
SolverOutcome run_solver(const EncodingProblem &problem, const SolverBridgeConfig &config);

// Runs the solver on a problem built for (tree, instance, delta) and turns
// the model into a fixed-feature witness. The witness is re-checked with
// exact counting (WeakPAXp, within the bound, inside the consistent path,
// a proper subset for minimality checks) and against the problem's own
// assertions; any mismatch is a BackendError.
OracleAnswer solve_external(const DecisionTree &tree, const Instance &instance,
                            const Threshold &delta, const EncodingProblem &problem,
                            const EncodingOptions &options, const SolverBridgeConfig &config);

} // namespace paxp::smt
