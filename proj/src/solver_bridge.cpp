#include "paxp/smt/solver_bridge.hpp"

#include "paxp/counting.hpp"
#include "paxp/error.hpp"
#include "paxp/tree_io.hpp"

#include <csignal>
#include <cstdlib>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

namespace paxp::smt {

namespace fs = std::filesystem;

namespace {

// Temporary file removed on scope exit.
class TempFile {
public:
  explicit TempFile(const std::string &suffix) {
    std::string pattern = (fs::temp_directory_path() / ("paxp-XXXXXX" + suffix)).string();
    std::vector<char> buffer(pattern.begin(), pattern.end());
    buffer.push_back('\0');
    int fd = ::mkstemps(buffer.data(), static_cast<int>(suffix.size()));
    if (fd < 0) {
      throw BackendError("cannot create temporary file");
    }
    ::close(fd);
    path_ = buffer.data();
  }
  TempFile(const TempFile &) = delete;
  TempFile &operator=(const TempFile &) = delete;
  ~TempFile() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  const std::string &path() const { return path_; }

private:
  std::string path_;
};

std::vector<bool> decode_model(const std::vector<SExpr> &response, std::size_t feature_count) {
  std::vector<std::optional<bool>> values(feature_count);
  // Accept both "((define-fun ...) ...)" and "(model (define-fun ...) ...)".
  auto visit = [&](const SExpr &entry) {
    if (!entry.headed("define-fun") || entry.items().size() != 5) return;
    const std::string &name = entry.items()[1].text();
    if (name.rfind("u_", 0) != 0) return;
    std::size_t j = 0;
    try {
      j = std::stoul(name.substr(2));
    } catch (const std::exception &) {
      return;
    }
    if (j == 0 || j > feature_count) return;
    const SExpr &value = entry.items()[4];
    if (!value.is("true") && !value.is("false")) {
      throw BackendError("unparseable model value for " + name);
    }
    values[j - 1] = value.is("true");
  };
  for (const SExpr &e : response) {
    if (!e.is_list()) continue;
    for (const SExpr &entry : e.items()) visit(entry);
  }
  std::vector<bool> out(feature_count);
  for (std::size_t j = 0; j < feature_count; ++j) {
    if (!values[j]) {
      throw BackendError("solver model lacks " + universal_symbol(j));
    }
    out[j] = *values[j];
  }
  return out;
}

} // namespace

SolverBridgeConfig SolverBridgeConfig::from_environment() {
  SolverBridgeConfig config;
  if (const char *value = std::getenv(environment_variable)) {
    config.executable = value;
  }
  return config;
}

std::optional<std::string> locate_executable(const std::string &name) {
  if (name.empty()) return std::nullopt;
  if (name.find('/') != std::string::npos) {
    if (::access(name.c_str(), X_OK) == 0) return name;
    return std::nullopt;
  }
  const char *path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::string dirs = path;
  std::size_t start = 0;
  while (start <= dirs.size()) {
    std::size_t end = dirs.find(':', start);
    if (end == std::string::npos) end = dirs.size();
    fs::path candidate = fs::path(dirs.substr(start, end - start)) / name;
    if (::access(candidate.c_str(), X_OK) == 0 && fs::is_regular_file(candidate)) {
      return candidate.string();
    }
    start = end + 1;
  }
  return std::nullopt;
}

SolverOutcome run_solver(const EncodingProblem &problem, const SolverBridgeConfig &config) {
  auto executable = locate_executable(config.executable);
  if (!executable) {
    throw BackendError("SMT solver not found: '" + config.executable + "' (set " +
                       SolverBridgeConfig::environment_variable + " or --solver)");
  }

  TempFile input(".smt2");
  TempFile output(".out");
  {
    std::ofstream out(input.path(), std::ios::binary);
    out << to_smtlib(problem);
    if (!out) {
      throw BackendError("cannot write problem file " + input.path());
    }
  }

  std::vector<std::string> argv_storage{*executable};
  argv_storage.insert(argv_storage.end(), config.arguments.begin(), config.arguments.end());
  argv_storage.push_back(input.path());
  std::vector<char *> argv;
  for (std::string &a : argv_storage) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) {
    throw BackendError("fork failed");
  }
  if (pid == 0) {
    int fd = ::open(output.path().c_str(), O_WRONLY | O_TRUNC);
    if (fd >= 0) {
      ::dup2(fd, STDOUT_FILENO);
      ::close(fd);
    }
    int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) {
      ::dup2(devnull, STDERR_FILENO);
      ::close(devnull);
    }
    ::execv(argv[0], argv.data());
    ::_exit(127);
  }

  auto deadline = std::chrono::steady_clock::now() + config.time_limit;
  int status = 0;
  auto pause = std::chrono::microseconds(200);
  for (;;) {
    pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) {
      throw BackendError("waitpid failed");
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      throw BackendError("SMT solver timed out");
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(20000));
  }
  if (!WIFEXITED(status)) {
    throw BackendError("SMT solver terminated abnormally");
  }
  if (WEXITSTATUS(status) == 127) {
    throw BackendError("SMT solver could not be executed");
  }

  SolverOutcome outcome;
  outcome.output = read_file(output.path());
  std::vector<SExpr> response;
  try {
    response = parse_sexprs(outcome.output);
  } catch (const std::runtime_error &e) {
    throw BackendError(std::string("unparseable solver output: ") + e.what());
  }
  if (response.empty() || !response.front().is_atom()) {
    throw BackendError("solver printed no verdict");
  }
  const SExpr &verdict = response.front();
  if (verdict.is("unsat")) {
    outcome.status = SolverStatus::Unsat;
    return outcome;
  }
  if (!verdict.is("sat")) {
    throw BackendError("solver answered '" + verdict.text() + "'");
  }
  outcome.status = SolverStatus::Sat;
  outcome.universal = decode_model(response, problem.feature_count);
  return outcome;
}

OracleAnswer solve_external(const DecisionTree &tree, const Instance &instance,
                            const Threshold &delta, const EncodingProblem &problem,
                            const EncodingOptions &options, const SolverBridgeConfig &config) {
  SolverOutcome outcome = run_solver(problem, config);
  if (outcome.status == SolverStatus::Unsat) {
    return OracleAnswer{false, std::nullopt};
  }

  FeatureSet witness(tree.feature_count());
  for (FeatureId j = 0; j < outcome.universal.size(); ++j) {
    if (!outcome.universal[j]) witness.insert(j);
  }
  auto reject = [](const std::string &why) -> OracleAnswer {
    throw BackendError("solver witness rejected: " + why);
  };
  if (!evaluate_encoding(problem, outcome.universal).all_assertions_hold) {
    return reject("model violates the problem's assertions");
  }
  if (!is_weak_paxp(tree, instance, witness, delta)) {
    return reject("not a WeakPAXp by exact counting");
  }
  if (!witness.subset_of(tree.consistent_path(instance.point).tested)) {
    return reject("fixes features outside the consistent path");
  }
  if (options.bound && witness.size() > *options.bound) {
    return reject("exceeds the size bound");
  }
  if (options.minimality_of &&
      (!witness.subset_of(*options.minimality_of) || witness == *options.minimality_of)) {
    return reject("not a proper subset of the checked set");
  }
  return OracleAnswer{true, std::move(witness)};
}

} // namespace paxp::smt
