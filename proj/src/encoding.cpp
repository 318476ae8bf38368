#include "paxp/smt/encoding.hpp"

#include "paxp/counting.hpp"
#include "paxp/error.hpp"

#include <cctype>
#include <regex>
#include <unordered_map>

namespace paxp::smt {

namespace {

SExpr atom(std::string s) { return SExpr::atom(std::move(s)); }
SExpr numeral(const BigInt &n) { return atom(n.str()); }
SExpr numeral(std::size_t n) { return atom(std::to_string(n)); }

SExpr nary(const char *op, std::vector<SExpr> terms, const char *identity) {
  if (terms.empty()) return atom(identity);
  if (terms.size() == 1) return std::move(terms.front());
  std::vector<SExpr> items{atom(op)};
  for (SExpr &t : terms) items.push_back(std::move(t));
  return SExpr::list(std::move(items));
}

SExpr sum(std::vector<SExpr> terms) { return nary("+", std::move(terms), "0"); }
SExpr product(std::vector<SExpr> terms) { return nary("*", std::move(terms), "1"); }
SExpr ite(SExpr c, SExpr a, SExpr b) { return SExpr::call("ite", std::move(c), std::move(a), std::move(b)); }

SExpr define_int(const std::string &name, SExpr body) {
  return SExpr::list({atom("define-fun"), atom(name), SExpr::list({}), atom("Int"), std::move(body)});
}

SExpr named_assert(SExpr term, const std::string &name) {
  return SExpr::call("assert", SExpr::list({atom("!"), std::move(term), atom(":named"), atom(name)}));
}

std::string idx(std::size_t i) { return std::to_string(i + 1); }

std::string chain_symbol(std::size_t j, std::size_t k) { return "eta_" + std::to_string(j) + "_" + idx(k); }
std::string partial_symbol(std::size_t j, std::size_t l, std::size_t k) {
  return "s_" + std::to_string(j) + "_" + std::to_string(l) + "_" + idx(k);
}

// Per-path count definitions for the multiplication encoding.
void emit_products(const CountTable &table, std::vector<SExpr> &out) {
  for (std::size_t k = 0; k < table.path_count(); ++k) {
    std::vector<SExpr> factors;
    for (FeatureId j = 0; j < table.feature_count(); ++j) {
      factors.push_back(ite(atom(universal_symbol(j)), numeral(table.universal_factor(k, j)),
                            numeral(table.fixed_factor(k, j))));
    }
    out.push_back(define_int(path_count_symbol(k), product(std::move(factors))));
  }
}

// Per-path running sums for the addition encoding: eta_j_k accumulates the
// models over features 1..j, value by value.
void emit_sums(const DecisionTree &tree, const Instance &instance, std::vector<SExpr> &out) {
  const std::size_t m = tree.feature_count();
  for (const Path &path : tree.paths()) {
    const std::size_t k = path.index;
    for (std::size_t j = 1; j <= m; ++j) {
      const FeatureId f = j - 1;
      SExpr previous_eta = j == 1 ? atom("1") : atom(chain_symbol(j - 1, k));
      SExpr running = atom("0");
      const std::size_t r = tree.space().domain_size(f);
      for (std::size_t l = 1; l <= r; ++l) {
        const ValueId value = l - 1;
        const bool matches_instance = value == instance.point[f];
        SExpr guarded = ite(atom(universal_symbol(f)), previous_eta, atom("0"));
        SExpr body;
        if (path.tests(f)) {
          if (!path.literals[f]->contains(value)) {
            body = running;
          } else if (matches_instance) {
            body = sum({running, previous_eta});
          } else {
            body = sum({running, guarded});
          }
        } else if (matches_instance) {
          body = sum({running, previous_eta});
        } else {
          body = sum({running, guarded});
        }
        // s_j_0_k = 0, so the first addend stands alone.
        if (running.is("0") && body.headed("+")) {
          SExpr addend = body.items()[2];
          body = std::move(addend);
        }
        std::string name = partial_symbol(j, l, k);
        out.push_back(define_int(name, std::move(body)));
        running = atom(name);
      }
      out.push_back(define_int(chain_symbol(j, k), running));
    }
    out.push_back(define_int(path_count_symbol(k), m == 0 ? atom("1") : atom(chain_symbol(m, k))));
  }
}

struct Value {
  bool is_bool = false;
  bool truth = false;
  BigInt number = 0;
};

class Evaluator {
public:
  explicit Evaluator(std::unordered_map<std::string, Value> env) : env_(std::move(env)) {}

  void define(const std::string &name, Value v) { env_[name] = std::move(v); }
  const Value *lookup(const std::string &name) const {
    auto it = env_.find(name);
    return it == env_.end() ? nullptr : &it->second;
  }

  Value eval(const SExpr &e) const {
    if (e.is_atom()) {
      const std::string &t = e.text();
      if (t == "true" || t == "false") return {true, t == "true", 0};
      if (!t.empty() && std::isdigit(static_cast<unsigned char>(t[0]))) {
        return {false, false, BigInt(t)};
      }
      if (const Value *v = lookup(t)) return *v;
      fail("unbound symbol '" + t + "'");
    }
    const auto &items = e.items();
    if (items.empty() || !items[0].is_atom()) fail("malformed term " + e.str());
    const std::string &op = items[0].text();
    if (op == "!") return eval(items.at(1));
    if (op == "ite") {
      return boolean(items.at(1)) ? eval(items.at(2)) : eval(items.at(3));
    }
    if (op == "+" || op == "*") {
      BigInt acc = op == "+" ? 0 : 1;
      for (std::size_t i = 1; i < items.size(); ++i) {
        BigInt v = number(items[i]);
        if (op == "+") acc += v; else acc *= v;
      }
      return {false, false, acc};
    }
    if (op == "-") {
      BigInt acc = number(items.at(1));
      if (items.size() == 2) return {false, false, -acc};
      for (std::size_t i = 2; i < items.size(); ++i) acc -= number(items[i]);
      return {false, false, acc};
    }
    if (op == ">=" || op == "<=" || op == ">" || op == "<") {
      BigInt a = number(items.at(1));
      BigInt b = number(items.at(2));
      bool r = op == ">=" ? a >= b : op == "<=" ? a <= b : op == ">" ? a > b : a < b;
      return {true, r, 0};
    }
    if (op == "=") {
      Value a = eval(items.at(1));
      Value b = eval(items.at(2));
      return {true, a.is_bool ? a.truth == b.truth : a.number == b.number, 0};
    }
    if (op == "and" || op == "or") {
      bool acc = op == "and";
      for (std::size_t i = 1; i < items.size(); ++i) {
        bool v = boolean(items[i]);
        acc = op == "and" ? (acc && v) : (acc || v);
      }
      return {true, acc, 0};
    }
    if (op == "not") return {true, !boolean(items.at(1)), 0};
    fail("unsupported operator '" + op + "'");
  }

  bool boolean(const SExpr &e) const {
    Value v = eval(e);
    if (!v.is_bool) fail("expected Bool term: " + e.str());
    return v.truth;
  }
  BigInt number(const SExpr &e) const {
    Value v = eval(e);
    if (v.is_bool) fail("expected Int term: " + e.str());
    return v.number;
  }

  [[noreturn]] static void fail(const std::string &what) {
    throw PreconditionError("malformed encoding: " + what);
  }

private:
  std::unordered_map<std::string, Value> env_;
};

} // namespace

std::string_view to_string(Encoding encoding) {
  return encoding == Encoding::Multiplication ? "mult" : "add";
}

std::optional<Encoding> parse_encoding(std::string_view name) {
  if (name == "mult") return Encoding::Multiplication;
  if (name == "add") return Encoding::Addition;
  return std::nullopt;
}

std::string_view logic_of(Encoding encoding) {
  return encoding == Encoding::Multiplication ? "QF_NIA" : "QF_LIA";
}

std::string universal_symbol(FeatureId feature) { return "u_" + idx(feature); }
std::string path_count_symbol(std::size_t path) { return "eta_" + idx(path); }

EncodingProblem emit_encoding(Encoding encoding, const DecisionTree &tree,
                              const Instance &instance, const Threshold &delta,
                              const EncodingOptions &options) {
  const std::size_t m = tree.feature_count();
  EncodingProblem problem;
  problem.encoding = encoding;
  problem.logic = std::string(logic_of(encoding));
  problem.feature_count = m;
  problem.path_count = tree.paths().size();

  auto &cmds = problem.commands;
  cmds.push_back(SExpr::call("set-option", atom(":produce-models"), atom("true")));
  cmds.push_back(SExpr::call("set-logic", atom(problem.logic)));
  for (FeatureId j = 0; j < m; ++j) {
    cmds.push_back(SExpr::list({atom("declare-fun"), atom(universal_symbol(j)), SExpr::list({}), atom("Bool")}));
  }

  if (encoding == Encoding::Multiplication) {
    emit_products(CountTable(tree, instance), cmds);
  } else {
    emit_sums(tree, instance, cmds);
  }

  std::vector<SExpr> matching;
  std::vector<SExpr> others;
  for (const Path &p : tree.paths()) {
    (p.label == instance.prediction ? matching : others).push_back(atom(path_count_symbol(p.index)));
  }
  SExpr favourable = sum(matching);
  SExpr lhs = SExpr::call("*", numeral(delta.q()), favourable);
  SExpr rhs = SExpr::call("+", SExpr::call("*", numeral(delta.p()), favourable),
                          SExpr::call("*", numeral(delta.p()), sum(others)));
  cmds.push_back(named_assert(SExpr::call(">=", std::move(lhs), std::move(rhs)), "threshold"));

  const Path &consistent = tree.consistent_path(instance.point);
  for (FeatureId j = 0; j < m; ++j) {
    if (!consistent.tests(j)) {
      cmds.push_back(named_assert(atom(universal_symbol(j)), "universal_" + idx(j)));
    }
  }

  if (options.minimality_of) {
    const FeatureSet &fixed = *options.minimality_of;
    std::vector<SExpr> release;
    for (FeatureId j = 0; j < m; ++j) {
      if (fixed.contains(j)) {
        release.push_back(atom(universal_symbol(j)));
      } else if (consistent.tests(j)) {
        cmds.push_back(named_assert(atom(universal_symbol(j)), "keep_" + idx(j)));
      }
    }
    cmds.push_back(named_assert(nary("or", std::move(release), "false"), "release"));
  }

  if (options.bound) {
    std::vector<SExpr> fixed_flags;
    for (FeatureId j = 0; j < m; ++j) {
      fixed_flags.push_back(ite(atom(universal_symbol(j)), atom("0"), atom("1")));
    }
    cmds.push_back(named_assert(SExpr::call("<=", sum(std::move(fixed_flags)), numeral(*options.bound)),
                                "cardinality"));
  }

  cmds.push_back(SExpr::list({atom("check-sat")}));
  cmds.push_back(SExpr::list({atom("get-model")}));
  return problem;
}

EncodingProblem emit_mult_encoding(const DecisionTree &tree, const Instance &instance,
                                   const Threshold &delta, std::size_t bound) {
  return emit_encoding(Encoding::Multiplication, tree, instance, delta, {bound, std::nullopt});
}

EncodingProblem emit_add_encoding(const DecisionTree &tree, const Instance &instance,
                                  const Threshold &delta, std::size_t bound) {
  return emit_encoding(Encoding::Addition, tree, instance, delta, {bound, std::nullopt});
}

std::string to_smtlib(const EncodingProblem &problem) {
  std::string out;
  out += "; WeakPAXp decision query, ";
  out += to_string(problem.encoding);
  out += " encoding, " + std::to_string(problem.feature_count) + " features, " +
         std::to_string(problem.path_count) + " paths\n";
  for (const SExpr &cmd : problem.commands) {
    cmd.append_to(out);
    out += '\n';
  }
  return out;
}

EncodingProblem parse_problem(std::string_view text) {
  EncodingProblem problem;
  try {
    problem.commands = parse_sexprs(text);
  } catch (const std::runtime_error &e) {
    throw PreconditionError(std::string("malformed encoding: ") + e.what());
  }
  static const std::regex u_name(R"(u_[0-9]+)");
  static const std::regex eta_name(R"(eta_[0-9]+)");
  bool has_logic = false;
  for (const SExpr &cmd : problem.commands) {
    if (cmd.headed("set-logic") && cmd.items().size() == 2) {
      problem.logic = cmd.items()[1].text();
      has_logic = true;
    } else if (cmd.headed("declare-fun") && cmd.items().size() >= 2 &&
               std::regex_match(cmd.items()[1].text(), u_name)) {
      ++problem.feature_count;
    } else if (cmd.headed("define-fun") && cmd.items().size() >= 2 &&
               std::regex_match(cmd.items()[1].text(), eta_name)) {
      ++problem.path_count;
    }
  }
  if (!has_logic) {
    throw PreconditionError("malformed encoding: missing set-logic");
  }
  if (problem.logic == logic_of(Encoding::Multiplication)) {
    problem.encoding = Encoding::Multiplication;
  } else if (problem.logic == logic_of(Encoding::Addition)) {
    problem.encoding = Encoding::Addition;
  } else {
    throw PreconditionError("malformed encoding: unexpected logic " + problem.logic);
  }
  return problem;
}

EncodingEvaluation evaluate_encoding(const EncodingProblem &problem,
                                     const std::vector<bool> &universal) {
  if (universal.size() != problem.feature_count) {
    throw PreconditionError("assignment size does not match the problem's u variables");
  }
  EncodingEvaluation result;
  std::unordered_map<std::string, Value> env;
  for (FeatureId j = 0; j < universal.size(); ++j) {
    env[universal_symbol(j)] = {true, universal[j], 0};
    if (!universal[j]) ++result.fixed_count;
  }
  Evaluator evaluator(std::move(env));

  std::size_t unnamed = 0;
  for (const SExpr &cmd : problem.commands) {
    if (cmd.headed("define-fun")) {
      const auto &items = cmd.items();
      if (items.size() != 5 || !items[2].is_list() || !items[2].items().empty()) {
        Evaluator::fail("unsupported define-fun " + cmd.str());
      }
      evaluator.define(items[1].text(), evaluator.eval(items[4]));
    } else if (cmd.headed("declare-fun") || cmd.headed("declare-const")) {
      if (!evaluator.lookup(cmd.items().at(1).text())) {
        Evaluator::fail("no value for declared symbol " + cmd.items().at(1).text());
      }
    } else if (cmd.headed("assert")) {
      const SExpr &term = cmd.items().at(1);
      std::string name = "assert_" + std::to_string(++unnamed);
      if (term.headed("!")) {
        const auto &items = term.items();
        for (std::size_t i = 2; i + 1 < items.size(); ++i) {
          if (items[i].is(":named")) name = items[i + 1].text();
        }
      }
      bool holds = evaluator.boolean(term);
      result.assertions[name] = holds;
      result.all_assertions_hold = result.all_assertions_hold && holds;
      if (name == "threshold") result.threshold = holds;
      if (name == "cardinality") result.cardinality = holds;
    }
  }

  for (std::size_t k = 0; k < problem.path_count; ++k) {
    const Value *v = evaluator.lookup(path_count_symbol(k));
    if (!v || v->is_bool) {
      Evaluator::fail("missing path count " + path_count_symbol(k));
    }
    result.path_counts.push_back(v->number);
  }
  return result;
}

} // namespace paxp::smt
