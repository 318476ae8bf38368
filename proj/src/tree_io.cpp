#include "paxp/tree_io.hpp"

#include "paxp/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace paxp {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string &what) { throw SchemaError("schema error: " + what); }

const json &require(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    schema_error(where + ": missing field '" + key + "'");
  }
  return *it;
}

std::string scalar_label(const json &value, const std::string &where) {
  if (value.is_number_integer()) {
    return std::to_string(value.get<std::int64_t>());
  }
  if (value.is_string()) {
    return value.get<std::string>();
  }
  schema_error(where + ": expected integer or string value");
}

// Expands a value list or {"min","max"} interval into labels.
std::vector<std::string> value_labels(const json &spec, const std::string &where, bool &numeric) {
  std::vector<std::string> out;
  if (spec.is_object()) {
    const json &lo = require(spec, "min", where);
    const json &hi = require(spec, "max", where);
    if (!lo.is_number_integer() || !hi.is_number_integer()) {
      schema_error(where + ": interval bounds must be integers");
    }
    auto a = lo.get<std::int64_t>();
    auto b = hi.get<std::int64_t>();
    if (a > b) {
      schema_error(where + ": empty interval");
    }
    if (b - a > 1'000'000) {
      schema_error(where + ": interval too large");
    }
    for (auto v = a; v <= b; ++v) out.push_back(std::to_string(v));
    numeric = true;
    return out;
  }
  if (!spec.is_array()) {
    schema_error(where + ": expected array or interval object");
  }
  bool any_string = false;
  bool any_int = false;
  for (const json &v : spec) {
    out.push_back(scalar_label(v, where));
    (v.is_string() ? any_string : any_int) = true;
  }
  if (any_string && any_int) {
    schema_error(where + ": mixes integer and string values");
  }
  numeric = !any_string;
  return out;
}

FeatureId resolve_feature(const json &ref, const FeatureSpace &space, NodeId id) {
  std::string where = "node " + std::to_string(id);
  if (ref.is_number_unsigned() || ref.is_number_integer()) {
    auto i = ref.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= space.size()) {
      throw ValidationError("unknown feature index at " + where);
    }
    return static_cast<FeatureId>(i);
  }
  if (ref.is_string()) {
    auto found = space.find(ref.get<std::string>());
    if (!found) {
      throw ValidationError("unknown feature name at " + where);
    }
    return *found;
  }
  schema_error(where + ": 'feature' must be an index or a name");
}

} // namespace

DecisionTree parse_tree(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error &e) {
    schema_error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    schema_error("document must be an object");
  }

  const json &features = require(doc, "features", "document");
  if (!features.is_array()) {
    schema_error("'features' must be an array");
  }
  std::vector<FeatureSpec> specs;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const json &f = features[i];
    std::string where = "feature " + std::to_string(i);
    if (!f.is_object()) {
      schema_error(where + " must be an object");
    }
    const json &name = require(f, "name", where);
    if (!name.is_string()) {
      schema_error(where + ": 'name' must be a string");
    }
    FeatureSpec spec;
    spec.name = name.get<std::string>();
    spec.labels = value_labels(require(f, "domain", where), where + " domain", spec.numeric);
    specs.push_back(std::move(spec));
  }
  FeatureSpace space(std::move(specs));

  const json &classes_json = require(doc, "classes", "document");
  if (!classes_json.is_array()) {
    schema_error("'classes' must be an array");
  }
  std::vector<std::string> classes;
  for (const json &c : classes_json) classes.push_back(scalar_label(c, "classes"));

  const json &nodes_json = require(doc, "nodes", "document");
  if (!nodes_json.is_array()) {
    schema_error("'nodes' must be an array");
  }
  const json &root_json = require(doc, "root", "document");
  if (!root_json.is_number_integer()) {
    schema_error("'root' must be an integer node id");
  }

  std::unordered_map<NodeId, std::size_t> index_of;
  for (std::size_t n = 0; n < nodes_json.size(); ++n) {
    const json &node = nodes_json[n];
    if (!node.is_object()) {
      schema_error("node entry " + std::to_string(n) + " must be an object");
    }
    const json &id = require(node, "id", "node entry " + std::to_string(n));
    if (!id.is_number_integer()) {
      schema_error("node entry " + std::to_string(n) + ": 'id' must be an integer");
    }
    if (!index_of.emplace(id.get<NodeId>(), n).second) {
      throw ValidationError("duplicate node id " + std::to_string(id.get<NodeId>()));
    }
  }

  std::vector<Node> nodes;
  for (const json &node_json : nodes_json) {
    Node node;
    node.id = node_json["id"].get<NodeId>();
    std::string where = "node " + std::to_string(node.id);
    if (node_json.contains("leaf")) {
      std::string label = scalar_label(node_json["leaf"], where);
      bool found = false;
      for (ClassId c = 0; c < classes.size(); ++c) {
        if (classes[c] == label) {
          node.label = c;
          found = true;
        }
      }
      if (!found) {
        throw ValidationError("leaf class '" + label + "' not in class set at " + where);
      }
      if (node_json.contains("edges") || node_json.contains("feature")) {
        throw ValidationError(where + " is both a leaf and a test");
      }
      nodes.push_back(std::move(node));
      continue;
    }
    FeatureId f = resolve_feature(require(node_json, "feature", where), space, node.id);
    node.feature = f;
    const json &edges = require(node_json, "edges", where);
    if (!edges.is_array()) {
      schema_error(where + ": 'edges' must be an array");
    }
    const FeatureSpec &spec = space[f];
    for (const json &edge_json : edges) {
      if (!edge_json.is_object()) {
        schema_error(where + ": edge must be an object");
      }
      Edge edge;
      edge.values = ValueSet(spec.domain_size());
      bool numeric = true;
      for (const std::string &label :
           value_labels(require(edge_json, "values", where), where + " edge", numeric)) {
        auto value = spec.find(label);
        if (!value) {
          throw ValidationError("edge value '" + label + "' outside domain of '" + spec.name +
                                "' at " + where);
        }
        edge.values.insert(*value);
      }
      const json &child = require(edge_json, "child", where);
      if (!child.is_number_integer()) {
        schema_error(where + ": 'child' must be an integer node id");
      }
      auto it = index_of.find(child.get<NodeId>());
      if (it == index_of.end()) {
        throw ValidationError("unknown child id " + std::to_string(child.get<NodeId>()) + " at " +
                              where);
      }
      edge.child = it->second;
      node.edges.push_back(std::move(edge));
    }
    nodes.push_back(std::move(node));
  }

  return DecisionTree(std::move(space), std::move(classes), std::move(nodes),
                      root_json.get<NodeId>());
}

std::string read_file(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw PreconditionError("cannot read " + file.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

DecisionTree load_tree(const std::filesystem::path &file) { return parse_tree(read_file(file)); }

std::string to_json(const DecisionTree &tree, int indent) {
  auto label_json = [](const FeatureSpec &spec, ValueId v) -> json {
    if (spec.numeric) return std::stoll(spec.labels[v]);
    return spec.labels[v];
  };
  json doc;
  doc["features"] = json::array();
  for (const FeatureSpec &spec : tree.space().features()) {
    json domain = json::array();
    for (ValueId v = 0; v < spec.domain_size(); ++v) domain.push_back(label_json(spec, v));
    doc["features"].push_back({{"name", spec.name}, {"domain", domain}});
  }
  doc["classes"] = tree.classes();
  doc["nodes"] = json::array();
  for (const Node &node : tree.nodes()) {
    json n;
    n["id"] = node.id;
    if (node.is_leaf()) {
      n["leaf"] = tree.classes()[*node.label];
    } else {
      n["feature"] = *node.feature;
      n["edges"] = json::array();
      const FeatureSpec &spec = tree.space()[*node.feature];
      for (const Edge &edge : node.edges) {
        json values = json::array();
        for (std::size_t v : edge.values.members()) values.push_back(label_json(spec, v));
        n["edges"].push_back({{"values", values}, {"child", tree.nodes()[edge.child].id}});
      }
    }
    doc["nodes"].push_back(std::move(n));
  }
  doc["root"] = tree.nodes()[tree.root()].id;
  return doc.dump(indent);
}

Instance parse_instance(const DecisionTree &tree, std::string_view row) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : row) {
    if (ch == ',') {
      fields.push_back(current);
      current.clear();
    } else if (ch != ' ' && ch != '\t' && ch != '\r') {
      current += ch;
    }
  }
  fields.push_back(current);

  const FeatureSpace &space = tree.space();
  if (fields.size() != space.size() && fields.size() != space.size() + 1) {
    throw ValidationError("instance '" + std::string(row) + "' has " +
                          std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(space.size()));
  }
  std::vector<ValueId> point;
  for (FeatureId i = 0; i < space.size(); ++i) {
    auto value = space[i].find(fields[i]);
    if (!value) {
      throw ValidationError("value '" + fields[i] + "' outside domain of feature '" +
                            space[i].name + "'");
    }
    point.push_back(*value);
  }
  std::optional<ClassId> expected;
  if (fields.size() == space.size() + 1) {
    expected = tree.find_class(fields.back());
    if (!expected) {
      throw ValidationError("unknown class '" + fields.back() + "' in instance");
    }
  }
  return make_instance(tree, std::move(point), expected);
}

std::vector<Instance> parse_instances(const DecisionTree &tree, std::string_view text) {
  std::vector<Instance> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_instance(tree, line));
  }
  return out;
}

std::vector<Instance> load_instances(const DecisionTree &tree, const std::filesystem::path &file) {
  return parse_instances(tree, read_file(file));
}

std::string format_point(const DecisionTree &tree, const std::vector<ValueId> &point) {
  std::string out;
  for (FeatureId i = 0; i < point.size(); ++i) {
    if (i > 0) out += ",";
    out += tree.space()[i].labels[point[i]];
  }
  return out;
}

std::vector<std::string> feature_names(const DecisionTree &tree, const FeatureSet &features) {
  std::vector<std::string> out;
  for (std::size_t i : features.members()) out.push_back(tree.space()[i].name);
  return out;
}

} // namespace paxp
