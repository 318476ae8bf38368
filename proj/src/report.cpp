#include "paxp/report.hpp"

#include "paxp/counting.hpp"
#include "paxp/error.hpp"
#include "paxp/minpaxp.hpp"
#include "paxp/tree_io.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace paxp {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
auto timed(double &seconds, Fn &&fn) {
  auto start = Clock::now();
  auto result = fn();
  seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

ExplanationRecord make_record(const DecisionTree &tree, const Instance &instance,
                              std::size_t index, Explanation explanation, double seconds) {
  ExplanationRecord r;
  r.instance_index = index;
  r.instance = format_point(tree, instance.point);
  r.prediction = tree.classes()[instance.prediction];
  r.path_depth = tree.consistent_path(instance.point).depth();
  r.feature_names = feature_names(tree, explanation.features);
  r.explanation = std::move(explanation);
  r.seconds = seconds;
  return r;
}

json feature_ids(const FeatureSet &set) {
  json out = json::array();
  for (std::size_t f : set.members()) out.push_back(f);
  return out;
}

} // namespace

std::optional<ExplainMode> parse_mode(std::string_view name) {
  if (name == "axp") return ExplainMode::Axp;
  if (name == "approx") return ExplainMode::Approx;
  if (name == "min") return ExplainMode::Min;
  if (name == "all") return ExplainMode::All;
  return std::nullopt;
}

ExplainReport run_explain(const DecisionTree &tree, const std::vector<Instance> &instances,
                          const RunOptions &options) {
  const bool want_axp = options.mode == ExplainMode::Axp || options.mode == ExplainMode::All;
  const bool want_approx = options.mode == ExplainMode::Approx || options.mode == ExplainMode::All ||
                           options.mode == ExplainMode::Stats;
  const bool want_min = options.mode == ExplainMode::Min || options.mode == ExplainMode::All ||
                        options.mode == ExplainMode::Stats;

  ExplainReport report;
  if (want_approx && want_min) report.min_not_larger_than_approx = true;

  for (std::size_t n = 0; n < instances.size(); ++n) {
    const Instance &instance = instances[n];
    if (want_axp) {
      double seconds = 0;
      Explanation e = timed(seconds, [&] { return compute_axp(tree, instance); });
      report.records.push_back(make_record(tree, instance, n, std::move(e), seconds));
    }
    for (const Threshold &delta : options.deltas) {
      MinPaxpSolver solver(tree, instance, options.backend, options.solver);
      std::optional<std::size_t> approx_size;
      if (want_approx) {
        double seconds = 0;
        Explanation e = timed(seconds, [&] { return compute_approx_paxp(tree, instance, delta); });
        e.subset_minimal = solver.is_paxp(e.features, delta);
        approx_size = e.features.size();
        report.records.push_back(make_record(tree, instance, n, std::move(e), seconds));
      }
      if (want_min) {
        double seconds = 0;
        Explanation e = timed(seconds, [&] { return solver.compute_min_paxp(delta); });
        if (approx_size && e.features.size() > *approx_size) {
          report.min_not_larger_than_approx = false;
        }
        report.records.push_back(make_record(tree, instance, n, std::move(e), seconds));
      }
    }
  }
  report.aggregates = aggregate(report.records);
  return report;
}

std::vector<Aggregate> aggregate(const std::vector<ExplanationRecord> &records) {
  std::map<std::pair<int, std::string>, std::vector<const ExplanationRecord *>> groups;
  std::vector<std::pair<int, std::string>> order;
  for (const ExplanationRecord &r : records) {
    auto key = std::make_pair(static_cast<int>(r.explanation.kind), r.explanation.delta.text());
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  std::sort(order.begin(), order.end());

  std::vector<Aggregate> out;
  for (const auto &key : order) {
    const auto &group = groups[key];
    Aggregate a;
    a.kind = static_cast<ExplanationKind>(key.first);
    a.delta = key.second;
    a.count = group.size();
    a.length_min = group.front()->explanation.features.size();
    Precision precision_sum(0, 1);
    std::size_t length_sum = 0;
    std::size_t minimal = 0;
    double seconds_sum = 0;
    for (const ExplanationRecord *r : group) {
      std::size_t len = r->explanation.features.size();
      a.length_max = std::max(a.length_max, len);
      a.length_min = std::min(a.length_min, len);
      length_sum += len;
      precision_sum = precision_sum + r->explanation.precision;
      if (r->explanation.subset_minimal.value_or(false)) ++minimal;
      seconds_sum += r->seconds;
    }
    a.length_avg = static_cast<double>(length_sum) / static_cast<double>(a.count);
    a.precision_avg = precision_sum / BigInt(a.count);
    a.subset_minimal_fraction = static_cast<double>(minimal) / static_cast<double>(a.count);
    a.seconds_avg = seconds_sum / static_cast<double>(a.count);
    out.push_back(std::move(a));
  }
  return out;
}

json to_json(const ExplainReport &report) {
  json doc;
  doc["records"] = json::array();
  for (const ExplanationRecord &r : report.records) {
    const Explanation &e = r.explanation;
    json rec = {
        {"instance_index", r.instance_index},
        {"instance", r.instance},
        {"prediction", r.prediction},
        {"path_depth", r.path_depth},
        {"kind", std::string(to_string(e.kind))},
        {"delta", e.delta.text()},
        {"features", r.feature_names},
        {"feature_ids", feature_ids(e.features)},
        {"size", e.features.size()},
        {"precision", e.precision.fraction()},
        {"precision_decimal", e.precision.decimal(6)},
        {"is_weak_paxp", e.is_weak_paxp},
        {"time_seconds", r.seconds},
    };
    rec["is_subset_minimal"] = e.subset_minimal ? json(*e.subset_minimal) : json(nullptr);
    doc["records"].push_back(std::move(rec));
  }
  doc["aggregates"] = json::array();
  for (const Aggregate &a : report.aggregates) {
    doc["aggregates"].push_back({
        {"kind", std::string(to_string(a.kind))},
        {"delta", a.delta},
        {"count", a.count},
        {"length_max", a.length_max},
        {"length_min", a.length_min},
        {"length_avg", a.length_avg},
        {"precision_avg", a.precision_avg.fraction()},
        {"precision_avg_decimal", a.precision_avg.decimal(6)},
        {"subset_minimal_fraction", a.subset_minimal_fraction},
        {"time_avg_seconds", a.seconds_avg},
    });
  }
  if (report.min_not_larger_than_approx) {
    doc["min_not_larger_than_approx"] = *report.min_not_larger_than_approx;
  }
  return doc;
}

bool VerifyReport::all_passed() const {
  return std::none_of(records.begin(), records.end(),
                      [](const VerifyRecord &r) { return r.status == "failed"; });
}

VerifyReport run_verify(const DecisionTree &tree, const std::vector<Instance> &instances,
                        const VerifyOptions &options) {
  VerifyReport report;
  for (std::size_t n = 0; n < instances.size(); ++n) {
    const Instance &instance = instances[n];
    VerifyRecord rec;
    rec.instance_index = n;
    rec.instance = format_point(tree, instance.point);
    const Path &path = tree.consistent_path(instance.point);
    if (!options.budget.admits(tree) || path.tested.size() > 20) {
      rec.status = "skipped: budget";
      report.records.push_back(std::move(rec));
      continue;
    }
    auto check = [&](bool ok, const std::string &what) {
      ++rec.checks;
      if (!ok) rec.failures.push_back(what);
    };
    auto name = [&](const FeatureSet &s) {
      std::string out = "{";
      for (const std::string &f : feature_names(tree, s)) out += (out.size() > 1 ? "," : "") + f;
      return out + "}";
    };

    CountTable table(tree, instance);
    const auto candidates = path.tested.members();
    std::vector<Precision> truth(std::size_t{1} << candidates.size());
    for (std::uint64_t mask = 0; mask < truth.size(); ++mask) {
      FeatureSet fixed(tree.feature_count());
      for (std::size_t pos = 0; pos < candidates.size(); ++pos) {
        if ((mask >> pos) & 1U) fixed.insert(candidates[pos]);
      }
      truth[mask] = bf_conditional_precision(tree, instance, fixed, options.budget);
      Precision counted = conditional_precision(tree, instance, fixed);
      if (options.corrupt_counts) {
        counted = Precision(counted.numerator() + 1, counted.denominator() + 1);
      }
      check(counted == truth[mask], "precision of " + name(fixed) + ": counted " +
                                        counted.fraction() + ", enumerated " + truth[mask].fraction());
    }
    auto bf = [&](const FeatureSet &s) {
      return bf_conditional_precision(tree, instance, s, options.budget);
    };

    Explanation axp = compute_axp(tree, instance);
    check(bf(axp.features) == Precision(1, 1), "AXp " + name(axp.features) + " is not sufficient");
    for (std::size_t f : axp.features.members()) {
      check(bf(axp.features.without(f)) != Precision(1, 1),
            "AXp " + name(axp.features) + " is not subset-minimal");
    }

    for (const Threshold &delta : options.deltas) {
      Explanation approx = compute_approx_paxp(tree, instance, delta);
      check(delta.admits(bf(approx.features)),
            "ApproxPAXp " + name(approx.features) + " below delta " + delta.text());
      for (std::size_t f : approx.features.members()) {
        check(!delta.admits(bf(approx.features.without(f))),
              "ApproxPAXp " + name(approx.features) + " not deletion-minimal at delta " + delta.text());
      }
      Explanation min = compute_min_paxp(tree, instance, delta);
      std::size_t expected = bf_min_size(tree, instance, delta, options.budget);
      check(min.features.size() == expected, "MinPAXp size " + std::to_string(min.features.size()) +
                                                 " != enumerated " + std::to_string(expected) +
                                                 " at delta " + delta.text());
      check(delta.admits(bf(min.features)), "MinPAXp " + name(min.features) + " below delta");
    }
    rec.status = rec.failures.empty() ? "passed" : "failed";
    report.records.push_back(std::move(rec));
  }
  return report;
}

json to_json(const VerifyReport &report) {
  json doc;
  doc["records"] = json::array();
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  for (const VerifyRecord &r : report.records) {
    doc["records"].push_back({{"instance_index", r.instance_index},
                              {"instance", r.instance},
                              {"status", r.status},
                              {"checks", r.checks},
                              {"failures", r.failures}});
    if (r.status == "passed") ++passed;
    else if (r.status == "failed") ++failed;
    else ++skipped;
  }
  doc["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped},
                    {"all_passed", report.all_passed()}};
  return doc;
}

} // namespace paxp
