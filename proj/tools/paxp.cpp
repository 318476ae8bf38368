// paxp: command-line driver for probabilistic abductive explanations of
// decision trees. Reports are JSON on stdout or in --out.
//
// Exit status: 0 success, 2 usage, 3 parse or validation failure,
// 4 backend failure, 5 verification failure.

#include "paxp/error.hpp"
#include "paxp/report.hpp"
#include "paxp/smt/encoding.hpp"
#include "paxp/tree_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInvalid = 3,
  kBackend = 4,
  kVerification = 5,
};

// Raised for bad flag values that CLI11 cannot catch itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputFlags {
  std::string tree;
  std::vector<std::string> instance_rows;
  std::string instances_file;
  std::vector<std::string> deltas;
};

std::vector<paxp::Threshold> parse_deltas(const std::vector<std::string> &texts) {
  std::vector<paxp::Threshold> out;
  for (const std::string &text : texts) {
    try {
      out.push_back(paxp::Threshold::parse(text));
    } catch (const paxp::PreconditionError &e) {
      throw UsageError(std::string("--delta: ") + e.what());
    }
  }
  if (out.empty()) throw UsageError("at least one --delta is required");
  return out;
}

std::vector<paxp::Instance> read_instances(const paxp::DecisionTree &tree, const InputFlags &in) {
  std::vector<paxp::Instance> out;
  for (const std::string &row : in.instance_rows) out.push_back(paxp::parse_instance(tree, row));
  if (!in.instances_file.empty()) {
    auto more = paxp::load_instances(tree, in.instances_file);
    out.insert(out.end(), more.begin(), more.end());
  }
  if (out.empty()) throw UsageError("no instances given");
  return out;
}

void emit(const std::string &text, const std::string &out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) throw UsageError("cannot write " + out_path);
}

paxp::smt::SolverBridgeConfig solver_config(const std::string &flag) {
  auto config = paxp::smt::SolverBridgeConfig::from_environment();
  if (!flag.empty()) config.executable = flag;
  return config;
}

void add_inputs(CLI::App *cmd, InputFlags &in, bool needs_file) {
  cmd->add_option("--tree", in.tree, "decision tree JSON")->required()->check(CLI::ExistingFile);
  if (!needs_file) {
    cmd->add_option("--instance", in.instance_rows, "comma-separated feature values");
  }
  auto *file = cmd->add_option("--instances", in.instances_file, "one instance per line")
                   ->check(CLI::ExistingFile);
  if (needs_file) file->required();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Probabilistic abductive explanations for decision trees"};
  app.require_subcommand(1);

  InputFlags in;
  std::string out_path;
  std::string mode_name = "all";
  std::string backend_name = "builtin";
  std::string solver_flag;
  std::size_t bound = 0;
  std::string encoding_name = "mult";
  std::uint64_t budget = paxp::EnumerationBudget{}.max_points;
  bool inject_fault = false;

  auto *explain = app.add_subcommand("explain", "compute explanations for instances");
  add_inputs(explain, in, false);
  explain->add_option("--delta", in.deltas, "threshold as decimal text (repeatable)");
  explain->add_option("--mode", mode_name, "axp, approx, min or all")
      ->check(CLI::IsMember({"axp", "approx", "min", "all"}));
  explain->add_option("--backend", backend_name, "builtin, smt-mult or smt-add")
      ->check(CLI::IsMember({"builtin", "smt-mult", "smt-add"}));
  explain->add_option("--solver", solver_flag, "SMT solver executable (overrides PAXP_SMT_SOLVER)");
  explain->add_option("--out", out_path, "report file (default stdout)");

  auto *emit_smt = app.add_subcommand("emit-smt", "write the WeakPAXp query as SMT-LIB2");
  emit_smt->add_option("--tree", in.tree, "decision tree JSON")->required()->check(CLI::ExistingFile);
  emit_smt->add_option("--instance", in.instance_rows, "comma-separated feature values")
      ->required()
      ->expected(1);
  emit_smt->add_option("--delta", in.deltas, "threshold as decimal text")->required()->expected(1);
  emit_smt->add_option("--k", bound, "at most this many fixed features")->required();
  emit_smt->add_option("--encoding", encoding_name, "mult or add")
      ->check(CLI::IsMember({"mult", "add"}));
  emit_smt->add_option("--out", out_path, "output file (default stdout)");

  auto *verify = app.add_subcommand("verify", "cross-check against brute-force enumeration");
  add_inputs(verify, in, false);
  verify->add_option("--delta", in.deltas, "threshold as decimal text (repeatable)");
  verify->add_option("--budget", budget, "largest feature space to enumerate");
  verify->add_flag("--inject-count-fault", inject_fault)->group("");
  verify->add_option("--out", out_path, "report file (default stdout)");

  auto *stats = app.add_subcommand("stats", "aggregate statistics per threshold");
  add_inputs(stats, in, true);
  stats->add_option("--delta,--deltas", in.deltas, "thresholds as decimal text")->delimiter(',');
  stats->add_option("--backend", backend_name, "builtin, smt-mult or smt-add")
      ->check(CLI::IsMember({"builtin", "smt-mult", "smt-add"}));
  stats->add_option("--solver", solver_flag, "SMT solver executable (overrides PAXP_SMT_SOLVER)");
  stats->add_option("--out", out_path, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    paxp::DecisionTree tree = paxp::load_tree(in.tree);

    if (*emit_smt) {
      auto encoding = paxp::smt::parse_encoding(encoding_name);
      if (!encoding) throw UsageError("unknown encoding '" + encoding_name + "'");
      auto delta = parse_deltas(in.deltas).front();
      paxp::Instance instance = paxp::parse_instance(tree, in.instance_rows.front());
      std::size_t path_features = tree.consistent_path(instance.point).tested.size();
      if (bound > path_features) {
        throw UsageError("--k exceeds the consistent path's " + std::to_string(path_features) +
                         " features");
      }
      auto problem = paxp::smt::emit_encoding(*encoding, tree, instance, delta, {bound, std::nullopt});
      emit(paxp::smt::to_smtlib(problem), out_path);
      return kOk;
    }

    if (*verify) {
      paxp::VerifyOptions options;
      options.deltas = in.deltas.empty() ? std::vector<paxp::Threshold>{paxp::Threshold::parse("1")}
                                         : parse_deltas(in.deltas);
      options.budget.max_points = budget;
      options.corrupt_counts = inject_fault;
      auto report = paxp::run_verify(tree, read_instances(tree, in), options);
      emit(paxp::to_json(report).dump(2) + "\n", out_path);
      return report.all_passed() ? kOk : kVerification;
    }

    paxp::RunOptions options;
    options.backend = *paxp::parse_backend(backend_name);
    options.solver = solver_config(solver_flag);
    if (*stats) {
      options.mode = paxp::ExplainMode::Stats;
      options.deltas = parse_deltas(in.deltas);
    } else {
      options.mode = *paxp::parse_mode(mode_name);
      if (options.mode == paxp::ExplainMode::Axp && in.deltas.empty()) in.deltas = {"1"};
      options.deltas = parse_deltas(in.deltas);
    }
    auto report = paxp::run_explain(tree, read_instances(tree, in), options);
    emit(paxp::to_json(report).dump(2) + "\n", out_path);
    if (report.min_not_larger_than_approx == false) {
      std::cerr << "paxp: a MinPAXp was larger than the ApproxPAXp for the same instance\n";
      return kVerification;
    }
    return kOk;
  } catch (const UsageError &e) {
    std::cerr << "paxp: " << e.what() << "\n";
    return kUsage;
  } catch (const paxp::BackendError &e) {
    std::cerr << "paxp: backend failure: " << e.what() << "\n";
    return kBackend;
  } catch (const paxp::Error &e) {
    std::cerr << "paxp: " << e.what() << "\n";
    return kInvalid;
  }
}
