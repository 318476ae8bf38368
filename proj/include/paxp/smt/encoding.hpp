#pragma once

#include "paxp/decision_tree.hpp"
#include "paxp/rational.hpp"
#include "paxp/smt/sexpr.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paxp::smt {

enum class Encoding {
  // eta_k = product of ite(u_j, universal count, fixed count); QF_NIA.
  Multiplication,
  // eta_k built by per-value running sums s_j_l_k; QF_LIA.
  Addition,
};

std::string_view to_string(Encoding encoding);
std::optional<Encoding> parse_encoding(std::string_view name);
std::string_view logic_of(Encoding encoding);

// A WeakPAXp decision query as SMT-LIB2 commands.
//
// Symbols use 1-based indices: u_j is feature j-1 of the tree (true means
// universal), eta_k is the model count of the k-th path in tree order.
// Assertions carry :named labels: "threshold", "cardinality", "universal_j"
// (hard clauses for features off the consistent path), and for minimality
// checks "keep_j" and "release".
struct EncodingProblem {
  Encoding encoding = Encoding::Multiplication;
  std::string logic;
  std::size_t feature_count = 0;
  std::size_t path_count = 0;
  std::vector<SExpr> commands;
};

struct EncodingOptions {
  // At most this many fixed features (u_j false).
  std::optional<std::size_t> bound;
  // Minimality check of this fixed set: features outside it stay universal
  // and at least one of its members must become universal.
  std::optional<FeatureSet> minimality_of;
};

EncodingProblem emit_encoding(Encoding encoding, const DecisionTree &tree,
                              const Instance &instance, const Threshold &delta,
                              const EncodingOptions &options);

EncodingProblem emit_mult_encoding(const DecisionTree &tree, const Instance &instance,
                                   const Threshold &delta, std::size_t bound);
EncodingProblem emit_add_encoding(const DecisionTree &tree, const Instance &instance,
                                  const Threshold &delta, std::size_t bound);

// Deterministic SMT-LIB2 text, one command per line.
std::string to_smtlib(const EncodingProblem &problem);

// Reads text produced by to_smtlib back into a problem. Throws
// PreconditionError when the text is not an encoding of this shape.
EncodingProblem parse_problem(std::string_view text);

std::string universal_symbol(FeatureId feature);
std::string path_count_symbol(std::size_t path);

struct EncodingEvaluation {
  std::vector<BigInt> path_counts; // value of eta_k per path
  std::optional<bool> threshold;
  std::optional<bool> cardinality;
  std::size_t fixed_count = 0;
  bool all_assertions_hold = true;
  std::map<std::string, bool> assertions; // by :named label
};

// Interprets the problem's definitions and assertions under a complete
// assignment of the u variables (universal[j] is the value of feature j's
// u variable). Throws PreconditionError for malformed problems.
EncodingEvaluation evaluate_encoding(const EncodingProblem &problem,
                                     const std::vector<bool> &universal);

} // namespace paxp::smt
