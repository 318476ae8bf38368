#pragma once

#include "paxp/counting.hpp"

#include <optional>
#include <vector>

namespace paxp {

// Exhaustive WeakPAXp search over subsets of a candidate feature set, all
// other features universal. Subsets are visited by increasing size and, per
// size, in lexicographic order, so the first hit is the lexicographically
// smallest among the smallest witnesses. Per-path partial products are
// shared along the enumeration prefix; there is no precision-based pruning
// since precision is not monotone in the fixed set.
class SubsetOracle {
public:
  // At most 64 candidates.
  SubsetOracle(const CountTable &table, const FeatureSet &candidates);

  // Smallest (then lexicographically first) subset of at most `max_size`
  // candidates that is a WeakPAXp.
  std::optional<FeatureSet> find(const Threshold &delta, std::size_t max_size);
  // Same, restricted to subsets of exactly `size` candidates.
  std::optional<FeatureSet> find_of_size(const Threshold &delta, std::size_t size);

  std::size_t candidate_count() const { return candidates_.size(); }
  std::size_t subsets_visited() const { return visited_; }

private:
  bool descend(std::size_t pos, std::size_t chosen, std::size_t size, std::uint64_t mask);
  FeatureSet to_set(std::uint64_t mask) const;

  const CountTable *table_;
  std::vector<FeatureId> candidates_;
  std::size_t feature_count_ = 0;
  // Per path: product of universal factors of the non-candidate features.
  std::vector<BigInt> base_;
  // suffix_[pos][k]: product of universal factors of candidates pos.. on k.
  std::vector<std::vector<BigInt>> suffix_;
  // levels_[pos][k]: partial product on path k after deciding pos candidates.
  std::vector<std::vector<BigInt>> levels_;
  std::vector<bool> matching_;
  const Threshold *delta_ = nullptr;
  std::uint64_t found_ = 0;
  std::size_t visited_ = 0;
};

} // namespace paxp
