#pragma once

#include "paxp/decision_tree.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace paxp {

// Parses an interchange document:
//
//   {"features":[{"name":"f1","domain":[1,2,3,4]}, ...],
//    "classes":["0","1"],
//    "nodes":[{"id":1,"feature":0,"edges":[{"values":[1],"child":2}, ...]},
//             {"id":4,"leaf":"0"}, ...],
//    "root":1}
//
// Domains and edge value lists may hold integers or strings; an object
// {"min":a,"max":b} denotes the integer interval [a, b]. A node's "feature"
// may be an index or a feature name.
//
// Throws SchemaError for shape problems and ValidationError for violated
// tree invariants.
DecisionTree parse_tree(std::string_view document);
DecisionTree load_tree(const std::filesystem::path &file);

// Canonical interchange text for a tree (integer domains stay integers).
std::string to_json(const DecisionTree &tree, int indent = -1);

// One comma-separated row of feature values with an optional trailing
// expected class label.
Instance parse_instance(const DecisionTree &tree, std::string_view row);
// One instance per non-empty line; '#' starts a comment line.
std::vector<Instance> parse_instances(const DecisionTree &tree, std::string_view text);
std::vector<Instance> load_instances(const DecisionTree &tree, const std::filesystem::path &file);

std::string format_point(const DecisionTree &tree, const std::vector<ValueId> &point);
std::vector<std::string> feature_names(const DecisionTree &tree, const FeatureSet &features);

std::string read_file(const std::filesystem::path &file);

} // namespace paxp
