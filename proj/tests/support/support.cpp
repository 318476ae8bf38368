#include "support.hpp"

#include "paxp/tree_io.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace paxp::test {

std::filesystem::path data_path(const std::string &name) {
  return std::filesystem::path(PAXP_TEST_DATA) / name;
}

const DecisionTree &fixture_tree() {
  static const DecisionTree tree = load_tree(data_path("fixture.json"));
  return tree;
}

Instance fixture_instance(std::vector<int> values) {
  std::vector<ValueId> point;
  for (int v : values) point.push_back(static_cast<ValueId>(v - 1));
  return make_instance(fixture_tree(), std::move(point));
}

FeatureSet features(std::size_t universe, std::initializer_list<std::size_t> one_based) {
  FeatureSet out(universe);
  for (std::size_t f : one_based) out.insert(f - 1);
  return out;
}

namespace {

struct Builder {
  std::mt19937_64 &rng;
  const TreeShape &shape;
  const FeatureSpace &space;
  std::vector<Node> nodes;

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

  std::size_t leaf() {
    Node n;
    n.id = static_cast<NodeId>(nodes.size() + 1);
    n.label = pick(shape.class_count);
    nodes.push_back(std::move(n));
    return nodes.size() - 1;
  }

  // effective[i]: values of feature i still admitted on the way here.
  std::size_t grow(std::vector<std::vector<ValueId>> effective, std::size_t depth, bool spine) {
    std::vector<FeatureId> splittable;
    for (FeatureId i = 0; i < effective.size(); ++i) {
      if (effective[i].size() >= 2) splittable.push_back(i);
    }
    bool stop = depth >= shape.max_depth || splittable.empty() || nodes.size() >= shape.node_cap;
    if (!spine && depth > 0) {
      stop = stop || std::bernoulli_distribution(shape.leaf_probability)(rng);
    }
    if (stop) return leaf();

    FeatureId f = splittable[pick(splittable.size())];
    std::vector<ValueId> e = effective[f];
    std::shuffle(e.begin(), e.end(), rng);
    std::size_t groups = 2 + pick(e.size() - 1);
    std::vector<std::vector<ValueId>> kept(groups);
    for (std::size_t g = 0; g < e.size(); ++g) kept[g < groups ? g : pick(groups)].push_back(e[g]);
    std::vector<std::vector<ValueId>> all = kept;
    for (ValueId v = 0; v < space.domain_size(f); ++v) {
      if (std::find(e.begin(), e.end(), v) == e.end()) all[pick(groups)].push_back(v);
    }

    std::size_t self = nodes.size();
    Node n;
    n.id = static_cast<NodeId>(self + 1);
    n.feature = f;
    nodes.push_back(std::move(n));
    std::vector<Edge> edges;
    for (std::size_t g = 0; g < groups; ++g) {
      auto child_effective = effective;
      child_effective[f] = kept[g];
      std::sort(child_effective[f].begin(), child_effective[f].end());
      std::size_t child = grow(std::move(child_effective), depth + 1, spine && g == 0);
      Edge edge;
      edge.values = ValueSet::from(space.domain_size(f), all[g]);
      edge.child = child;
      edges.push_back(std::move(edge));
    }
    nodes[self].edges = std::move(edges);
    return self;
  }
};

} // namespace

DecisionTree random_tree(std::mt19937_64 &rng, const TreeShape &shape) {
  for (;;) {
    std::size_t m = std::uniform_int_distribution<std::size_t>(shape.min_features,
                                                               shape.max_features)(rng);
    std::vector<FeatureSpec> specs;
    for (std::size_t i = 0; i < m; ++i) {
      FeatureSpec spec;
      spec.name = "x" + std::to_string(i + 1);
      std::size_t d = std::uniform_int_distribution<std::size_t>(2, shape.max_domain)(rng);
      for (std::size_t v = 1; v <= d; ++v) spec.labels.push_back(std::to_string(v));
      specs.push_back(std::move(spec));
    }
    FeatureSpace space(std::move(specs));
    std::vector<std::string> classes;
    for (std::size_t c = 0; c < shape.class_count; ++c) classes.push_back("c" + std::to_string(c));

    Builder b{rng, shape, space, {}};
    std::vector<std::vector<ValueId>> effective(m);
    for (FeatureId i = 0; i < m; ++i) {
      effective[i].resize(space.domain_size(i));
      std::iota(effective[i].begin(), effective[i].end(), ValueId{0});
    }
    b.grow(std::move(effective), 0, shape.force_max_depth);

    std::vector<bool> used(shape.class_count, false);
    for (const Node &n : b.nodes) {
      if (n.label) used[*n.label] = true;
    }
    if (std::count(used.begin(), used.end(), true) < 2) continue;
    return DecisionTree(std::move(space), std::move(classes), std::move(b.nodes), 1);
  }
}

std::vector<std::vector<ValueId>> all_points(const DecisionTree &tree) {
  std::vector<std::vector<ValueId>> out;
  std::vector<ValueId> point(tree.feature_count(), 0);
  for (;;) {
    out.push_back(point);
    std::size_t i = point.size();
    while (i > 0) {
      if (++point[i - 1] < tree.space().domain_size(i - 1)) break;
      point[i - 1] = 0;
      --i;
    }
    if (i == 0) return out;
  }
}

ClassId oracle_classify(const DecisionTree &tree, const std::vector<ValueId> &point) {
  const Node *node = &tree.nodes()[tree.root()];
  while (!node->label) {
    const Node *next = nullptr;
    for (const Edge &e : node->edges) {
      if (e.values.contains(point[*node->feature])) next = &tree.nodes()[e.child];
    }
    node = next;
  }
  return *node->label;
}

Precision oracle_precision(const DecisionTree &tree, const Instance &instance,
                           const FeatureSet &fixed) {
  long favourable = 0;
  long total = 0;
  for (const auto &point : all_points(tree)) {
    bool agrees = true;
    for (std::size_t f : fixed.members()) agrees = agrees && point[f] == instance.point[f];
    if (!agrees) continue;
    ++total;
    if (oracle_classify(tree, point) == instance.prediction) ++favourable;
  }
  return Precision(favourable, total);
}

std::vector<FeatureSet> all_subsets(const FeatureSet &candidates) {
  auto members = candidates.members();
  std::vector<FeatureSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << members.size()); ++mask) {
    FeatureSet s(candidates.universe());
    for (std::size_t b = 0; b < members.size(); ++b) {
      if ((mask >> b) & 1U) s.insert(members[b]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string show(const FeatureSet &set) {
  std::string out = "{";
  for (std::size_t f : set.members()) out += (out.size() > 1 ? "," : "") + std::to_string(f + 1);
  return out + "}";
}

} // namespace paxp::test
