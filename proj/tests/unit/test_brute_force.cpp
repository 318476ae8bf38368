#include "paxp/brute_force.hpp"
#include "paxp/counting.hpp"
#include "paxp/error.hpp"
#include "paxp/minpaxp.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace paxp;
using paxp::test::features;
using paxp::test::fixture_instance;
using paxp::test::fixture_tree;

TEST_CASE("enumerated precision on the running instance") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  CHECK(bf_conditional_precision(t, v, features(3, {3})) == Rational(15, 16));
  CHECK(bf_conditional_precision(t, v, features(3, {})) == Rational(21, 32));
  CHECK(bf_conditional_precision(t, v, FeatureSet::full(3)) == Rational(1, 1));
}

TEST_CASE("all PAXps and minimum size on the running instance") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  auto at_093 = bf_all_paxps(t, v, Threshold::parse("0.93"));
  REQUIRE(at_093.size() == 1);
  CHECK(at_093[0] == features(3, {3}));

  // Both two-feature sets containing f3 are sufficient; f3 alone is not.
  auto at_1 = bf_all_paxps(t, v, Threshold::parse("1"));
  REQUIRE(at_1.size() == 2);
  CHECK(at_1[0] == features(3, {1, 3}));
  CHECK(at_1[1] == features(3, {2, 3}));

  auto at_0 = bf_all_paxps(t, v, Threshold::parse("0"));
  REQUIRE(at_0.size() == 1);
  CHECK(at_0[0].empty());

  CHECK(bf_min_size(t, v, Threshold::parse("0.93")) == 1);
  CHECK(bf_min_size(t, v, Threshold::parse("1")) == 2);
  CHECK(bf_min_size(t, v, Threshold::parse("0")) == 0);
}

TEST_CASE("enumeration refuses oversized feature spaces") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  EnumerationBudget tiny{16};
  CHECK_FALSE(tiny.admits(t));
  CHECK_THROWS_AS(bf_conditional_precision(t, v, features(3, {}), tiny), BudgetExceeded);
  CHECK_THROWS_AS(bf_all_paxps(t, v, Threshold::parse("1"), tiny), BudgetExceeded);
  CHECK_THROWS_AS(bf_min_size(t, v, Threshold::parse("1"), tiny), BudgetExceeded);
  CHECK(EnumerationBudget{32}.admits(t));
}

TEST_CASE("random trees: enumeration agrees with counting and with is_paxp") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 40; ++round) {
    DecisionTree t = test::random_tree(rng);
    auto points = test::all_points(t);
    for (std::size_t s = 0; s < points.size(); s += 1 + points.size() / 5) {
      Instance v = make_instance(t, points[s]);
      const FeatureSet phi = t.consistent_path(v.point).tested;
      for (const FeatureSet &x : test::all_subsets(FeatureSet::full(t.feature_count()))) {
        Precision bf = bf_conditional_precision(t, v, x);
        CHECK(bf == conditional_precision(t, v, x));
        CHECK(bf == test::oracle_precision(t, v, x));
      }
      for (const char *text : {"0.7", "0.93", "1"}) {
        Threshold d = Threshold::parse(text);
        auto all = bf_all_paxps(t, v, d);
        MinPaxpSolver solver(t, v);
        for (const FeatureSet &x : all) {
          CHECK(x.subset_of(phi));
          CHECK(solver.is_paxp(x, d));
        }
        // Conversely, every WeakPAXp that is_paxp accepts is listed.
        for (const FeatureSet &x : test::all_subsets(phi)) {
          if (!is_weak_paxp(t, v, x, d)) continue;
          bool listed = std::find(all.begin(), all.end(), x) != all.end();
          CHECK(solver.is_paxp(x, d) == listed);
        }
        CHECK(bf_min_size(t, v, d) == all.front().size());
      }
    }
  }
}
