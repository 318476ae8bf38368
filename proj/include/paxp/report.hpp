#pragma once

#include "paxp/brute_force.hpp"
#include "paxp/explain.hpp"
#include "paxp/oracle.hpp"
#include "paxp/smt/solver_bridge.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace paxp {

enum class ExplainMode { Axp, Approx, Min, All, Stats };

std::optional<ExplainMode> parse_mode(std::string_view name);

struct RunOptions {
  ExplainMode mode = ExplainMode::All;
  std::vector<Threshold> deltas;
  Backend backend = Backend::Builtin;
  smt::SolverBridgeConfig solver;
};

struct ExplanationRecord {
  std::size_t instance_index = 0;
  std::string instance;
  std::string prediction;
  std::size_t path_depth = 0;
  Explanation explanation;
  std::vector<std::string> feature_names;
  double seconds = 0.0;
};

// Summary of all records sharing (kind, delta).
struct Aggregate {
  ExplanationKind kind = ExplanationKind::AXp;
  std::string delta;
  std::size_t count = 0;
  std::size_t length_max = 0;
  std::size_t length_min = 0;
  double length_avg = 0.0;
  Precision precision_avg;
  // m_sub: share of explanations certified subset-minimal.
  double subset_minimal_fraction = 0.0;
  double seconds_avg = 0.0;
};

struct ExplainReport {
  std::vector<ExplanationRecord> records;
  std::vector<Aggregate> aggregates;
  // |MinPAXp| <= |ApproxPAXp| held on every instance (modes all/stats).
  std::optional<bool> min_not_larger_than_approx;
};

// Runs the selected explainers on every instance, in input order.
// ApproxPAXp results are certified for subset-minimality with is_paxp.
ExplainReport run_explain(const DecisionTree &tree, const std::vector<Instance> &instances,
                          const RunOptions &options);

std::vector<Aggregate> aggregate(const std::vector<ExplanationRecord> &records);

nlohmann::json to_json(const ExplainReport &report);

struct VerifyOptions {
  std::vector<Threshold> deltas;
  EnumerationBudget budget;
  // Test hook: perturb every counting result before comparing.
  bool corrupt_counts = false;
};

struct VerifyRecord {
  std::size_t instance_index = 0;
  std::string instance;
  std::string status; // "passed", "failed", "skipped: budget"
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

struct VerifyReport {
  std::vector<VerifyRecord> records;
  bool all_passed() const;
};

// Cross-checks counting and every explainer against brute-force
// enumeration, instance by instance.
VerifyReport run_verify(const DecisionTree &tree, const std::vector<Instance> &instances,
                        const VerifyOptions &options);

nlohmann::json to_json(const VerifyReport &report);

} // namespace paxp
