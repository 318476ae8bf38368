#include "paxp/counting.hpp"
#include "paxp/error.hpp"
#include "paxp/tree_io.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace paxp;
using paxp::test::features;
using paxp::test::fixture_instance;
using paxp::test::fixture_tree;

namespace {
// Path indices of the fixture in tree order.
constexpr std::size_t Q1 = 0, P1 = 1, P2 = 2, Q2 = 3, P3 = 4;
} // namespace

TEST_CASE("feature factors follow the five rules") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  CHECK(feature_factor(t, Q2, 2, v, features(3, {3})) == 0); // fixed, tested, inconsistent
  CHECK(feature_factor(t, P3, 2, v, features(3, {3})) == 1); // fixed, tested, consistent
  CHECK(feature_factor(t, P1, 2, v, features(3, {3})) == 1); // fixed, untested
  CHECK(feature_factor(t, P3, 1, v, features(3, {})) == 3);  // universal, tested
  CHECK(feature_factor(t, P1, 2, v, features(3, {})) == 2);  // universal, untested
  CHECK(feature_factor(t, Q1, 0, v, features(3, {1})) == 0);
}

TEST_CASE("path model counts on the fixture") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  FeatureSet x3 = features(3, {3});
  CHECK(path_model_count(t, P3, v, x3) == 9);
  CHECK(path_model_count(t, P1, v, x3) == 3);
  CHECK(path_model_count(t, P2, v, x3) == 3);
  CHECK(path_model_count(t, Q1, v, x3) == 1);
  CHECK(path_model_count(t, Q2, v, x3) == 0);
  CHECK(path_model_count(t, P3, v, FeatureSet::full(3)) == 1);
  for (std::size_t k : {Q1, P1, P2, Q2}) CHECK(path_model_count(t, k, v, FeatureSet::full(3)) == 0);
}

TEST_CASE("path and class probabilities") {
  const DecisionTree &t = fixture_tree();
  CHECK(path_probability(t, P3) == Rational(9, 32));
  CHECK(path_probability(t, Q2) == Rational(9, 32));
  Rational sum(0, 1);
  for (std::size_t k = 0; k < t.paths().size(); ++k) sum = sum + path_probability(t, k);
  CHECK(sum == Rational(1, 1));
  CHECK(class_probability(t, *t.find_class("1")) == Rational(21, 32));
  CHECK(class_probability(t, *t.find_class("0")) == Rational(11, 32));
  CHECK_THROWS_AS(class_probability(t, 5), PreconditionError);

  DecisionTree coin = parse_tree(R"({"features":[{"name":"a","domain":[1,2]}],"classes":["n","y"],
    "nodes":[{"id":1,"feature":0,"edges":[{"values":[1],"child":2},{"values":[2],"child":3}]},
             {"id":2,"leaf":"n"},{"id":3,"leaf":"y"}],"root":1})");
  CHECK(class_probability(coin, 1) == Rational(1, 2));
}

TEST_CASE("conditional precision of the running instance") {
  const DecisionTree &t = fixture_tree();
  Instance v = fixture_instance({4, 4, 2});
  struct Row {
    FeatureSet x;
    Rational p;
  };
  std::vector<Row> rows{
      {features(3, {}), {21, 32}},     {features(3, {3}), {15, 16}},   {features(3, {1}), {5, 8}},
      {features(3, {2}), {5, 8}},      {features(3, {1, 2}), {1, 2}}, {features(3, {1, 3}), {1, 1}},
      {features(3, {2, 3}), {1, 1}},   {features(3, {1, 2, 3}), {1, 1}},
  };
  for (const Row &r : rows) {
    CAPTURE(test::show(r.x));
    CHECK(conditional_precision(t, v, r.x) == r.p);
    CHECK(test::oracle_precision(t, v, r.x) == r.p);
  }
  Precision p3 = conditional_precision(t, v, features(3, {3}));
  CHECK(p3.numerator() == 15);
  CHECK(p3.denominator() == 16);

  Threshold d = Threshold::parse("0.93");
  CHECK(is_weak_paxp(t, v, features(3, {3}), d));
  CHECK_FALSE(is_weak_paxp(t, v, features(3, {}), d));
  CHECK(is_weak_paxp(t, v, features(3, {1, 2, 3}), Threshold::parse("1")));
}

TEST_CASE("count table matches the direct rules") {
  const DecisionTree &t = fixture_tree();
  for (const Instance &v : load_instances(t, test::data_path("fixture_instances.csv"))) {
    CountTable table(t, v);
    for (const FeatureSet &x : test::all_subsets(FeatureSet::full(3))) {
      for (std::size_t k = 0; k < t.paths().size(); ++k) {
        CHECK(table.model_count(k, x) == path_model_count(t, k, v, x));
      }
      CHECK(table.precision(x) == conditional_precision(t, v, x));
    }
  }
}

TEST_CASE("random trees: exactness, totality and count monotonicity") {
  std::mt19937_64 rng(31337);
  for (int round = 0; round < 40; ++round) {
    DecisionTree t = test::random_tree(rng);
    const std::size_t m = t.feature_count();
    auto points = test::all_points(t);
    for (std::size_t s = 0; s < points.size(); s += 1 + points.size() / 6) {
      Instance v = make_instance(t, points[s]);
      for (const FeatureSet &x : test::all_subsets(FeatureSet::full(m))) {
        CAPTURE(test::show(x));
        Precision p = conditional_precision(t, v, x);
        REQUIRE(p == test::oracle_precision(t, v, x));

        BigInt total = 0;
        for (std::size_t k = 0; k < t.paths().size(); ++k) total += path_model_count(t, k, v, x);
        BigInt expected = 1;
        for (FeatureId i = 0; i < m; ++i) {
          if (!x.contains(i)) expected *= t.space().domain_size(i);
        }
        CHECK(total == expected);
        CHECK(p.denominator() == expected);

        for (FeatureId j = 0; j < m; ++j) {
          if (x.contains(j)) continue;
          for (std::size_t k = 0; k < t.paths().size(); ++k) {
            CHECK(path_model_count(t, k, v, x.with(j)) <= path_model_count(t, k, v, x));
          }
        }
      }
      CHECK(conditional_precision(t, v, FeatureSet::full(m)) == Rational(1, 1));
      CHECK(conditional_precision(t, v, t.consistent_path(v.point).tested) == Rational(1, 1));
    }
  }
}

TEST_CASE("large domains do not overflow") {
  // 30 features of 1000 values each: |F| = 10^90.
  std::vector<FeatureSpec> specs;
  for (int i = 0; i < 30; ++i) {
    FeatureSpec f;
    f.name = "g" + std::to_string(i);
    for (int v = 0; v < 1000; ++v) f.labels.push_back(std::to_string(v));
    specs.push_back(f);
  }
  std::vector<Node> nodes(3);
  nodes[0].id = 1;
  nodes[0].feature = 0;
  ValueSet low(1000), high(1000);
  for (std::size_t v = 0; v < 1000; ++v) (v < 1 ? low : high).insert(v);
  nodes[0].edges = {{low, 1}, {high, 2}};
  nodes[1].id = 2;
  nodes[1].label = 0;
  nodes[2].id = 3;
  nodes[2].label = 1;
  DecisionTree t(FeatureSpace(specs), {"a", "b"}, nodes, 1);
  Instance v = make_instance(t, std::vector<ValueId>(30, 5));
  Precision p = conditional_precision(t, v, FeatureSet(30));
  CHECK(p == Rational(999, 1000));
  BigInt big = 1;
  for (int i = 0; i < 90; ++i) big *= 10;
  CHECK(p.denominator() == big);
  CHECK(t.space().total_points() == big);
}
