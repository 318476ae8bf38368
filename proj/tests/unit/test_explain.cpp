#include "paxp/counting.hpp"
#include "paxp/error.hpp"
#include "paxp/explain.hpp"
#include "paxp/tree_io.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace paxp;
using paxp::test::features;
using paxp::test::fixture_instance;
using paxp::test::fixture_tree;

namespace {

// Sufficient (precision 1) and no single removal stays sufficient, judged
// by the test oracle. Sufficiency is monotone, so this is subset-minimality.
bool oracle_is_axp(const DecisionTree &t, const Instance &v, const FeatureSet &x) {
  if (test::oracle_precision(t, v, x) != Rational(1, 1)) return false;
  for (std::size_t f : x.members()) {
    if (test::oracle_precision(t, v, x.without(f)) == Rational(1, 1)) return false;
  }
  return true;
}

} // namespace

TEST_CASE("deletion order on the running instance") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  // Dropping f1 or f2 keeps precision 1; f2 is tested deeper, so it goes
  // first. Dropping f3 costs the most.
  FeatureOrder order = order_features(t, v, features(3, {1, 2, 3}));
  CHECK(order.features == std::vector<FeatureId>{1, 0, 2});
  CHECK(order_features(t, v, features(3, {3})).features == std::vector<FeatureId>{2});
}

TEST_CASE("equal losses go to the deeper test first") {
  DecisionTree t = parse_tree(R"({
    "features":[{"name":"a","domain":[1,2]},{"name":"b","domain":[1,2]}],
    "classes":["n","y"],
    "nodes":[{"id":1,"feature":"a","edges":[{"values":[1],"child":2},{"values":[2],"child":3}]},
             {"id":2,"leaf":"n"},
             {"id":3,"feature":"b","edges":[{"values":[1],"child":4},{"values":[2],"child":5}]},
             {"id":4,"leaf":"n"},{"id":5,"leaf":"y"}],
    "root":1})");
  Instance v = make_instance(t, {1, 1});
  CHECK(conditional_precision(t, v, features(2, {2})) == Rational(1, 2));
  CHECK(conditional_precision(t, v, features(2, {1})) == Rational(1, 2));
  CHECK(order_features(t, v, FeatureSet::full(2)).features == std::vector<FeatureId>{1, 0});
}

TEST_CASE("AXp of the running instance") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  Explanation e = compute_axp(t, v);
  CHECK(e.kind == ExplanationKind::AXp);
  CHECK(e.features == features(3, {1, 3}));
  CHECK(e.precision == Rational(1, 1));
  CHECK(e.subset_minimal == true);
  CHECK(oracle_is_axp(t, v, e.features));
  CHECK(test::oracle_precision(t, v, features(3, {1})) == Rational(5, 8));
  CHECK(test::oracle_precision(t, v, features(3, {3})) == Rational(15, 16));

  // The other order finds the other AXp.
  Explanation other = compute_axp(t, v, FeatureOrder{{0, 1, 2}});
  CHECK(other.features == features(3, {2, 3}));
  CHECK(oracle_is_axp(t, v, other.features));
}

TEST_CASE("AXp on a shallow path and on a single-test tree") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({1, 2, 1});
  Explanation e = compute_axp(t, v);
  CHECK(e.features.subset_of(features(3, {1, 2})));
  CHECK(oracle_is_axp(t, v, e.features));

  DecisionTree stump = parse_tree(R"({"features":[{"name":"a","domain":[1,2]},{"name":"b","domain":[1,2,3]}],
    "classes":["n","y"],
    "nodes":[{"id":1,"feature":0,"edges":[{"values":[1],"child":2},{"values":[2],"child":3}]},
             {"id":2,"leaf":"n"},{"id":3,"leaf":"y"}],"root":1})");
  CHECK(compute_axp(stump, make_instance(stump, {1, 2})).features == features(2, {1}));
}

TEST_CASE("ApproxPAXp on the running instance") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  Explanation e = compute_approx_paxp(t, v, Threshold::parse("0.93"));
  CHECK(e.kind == ExplanationKind::ApproxPAXp);
  CHECK(e.features == features(3, {3}));
  CHECK(e.precision == Rational(15, 16));
  CHECK(e.is_weak_paxp);
  CHECK_FALSE(e.subset_minimal.has_value());

  CHECK(compute_approx_paxp(t, v, Threshold::parse("1")).features == features(3, {1, 3}));
  CHECK(compute_approx_paxp(t, v, Threshold::parse("0")).features.empty());
}

TEST_CASE("deletion-minimality check") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  Threshold d = Threshold::parse("0.93");
  CHECK(is_deletion_minimal(t, v, features(3, {3}), d));
  CHECK_FALSE(is_deletion_minimal(t, v, features(3, {1, 2, 3}), d));
  CHECK(is_deletion_minimal(t, v, features(3, {}), Threshold::parse("0.5")));
  CHECK_THROWS_AS(is_deletion_minimal(t, v, features(3, {1}), d), PreconditionError);
}

TEST_CASE("orders must be permutations of the path's features") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  Threshold d = Threshold::parse("0.93");
  CHECK_THROWS_AS(compute_approx_paxp(t, v, d, FeatureOrder{{0, 1}}), PreconditionError);
  CHECK_THROWS_AS(compute_approx_paxp(t, v, d, FeatureOrder{{0, 1, 1}}), PreconditionError);
  Instance shallow = fixture_instance({1, 2, 1});
  CHECK_THROWS_AS(compute_axp(t, shallow, FeatureOrder{{0, 1, 2}}), PreconditionError);
}

TEST_CASE("random trees: explanation contracts") {
  std::mt19937_64 rng(99);
  const std::vector<std::string> deltas{"0", "0.5", "0.8", "0.93", "1"};
  for (int round = 0; round < 60; ++round) {
    DecisionTree t = test::random_tree(rng);
    auto points = test::all_points(t);
    for (std::size_t s = 0; s < points.size(); s += 1 + points.size() / 8) {
      Instance v = make_instance(t, points[s]);
      const FeatureSet phi = t.consistent_path(v.point).tested;
      CHECK(conditional_precision(t, v, phi) == Rational(1, 1));

      FeatureOrder order = order_features(t, v, phi);
      CHECK(FeatureSet::from(t.feature_count(), order.features) == phi);
      CHECK(order_features(t, v, phi).features == order.features);

      Explanation axp = compute_axp(t, v);
      CHECK(axp.features.subset_of(phi));
      CHECK(oracle_is_axp(t, v, axp.features));

      for (const std::string &text : deltas) {
        Threshold d = Threshold::parse(text);
        for (bool resort : {false, true}) {
          Explanation e = compute_approx_paxp(t, v, d, order, {resort});
          CAPTURE(text);
          CAPTURE(test::show(e.features));
          CHECK(e.features.subset_of(phi));
          CHECK(d.admits(test::oracle_precision(t, v, e.features)));
          CHECK(e.is_weak_paxp);
          for (std::size_t f : e.features.members()) {
            CHECK_FALSE(d.admits(test::oracle_precision(t, v, e.features.without(f))));
          }
          if (d.is_one()) CHECK(oracle_is_axp(t, v, e.features));
          if (d.is_zero()) CHECK(e.features.empty());
        }
      }
      // With the same order the δ=1 greedy coincides with the AXp.
      CHECK(compute_approx_paxp(t, v, Threshold::parse("1"), order).features == axp.features);
    }
  }
}
