#include "paxp/subset_oracle.hpp"

#include "paxp/error.hpp"

namespace paxp {

SubsetOracle::SubsetOracle(const CountTable &table, const FeatureSet &candidates)
    : table_(&table), feature_count_(table.feature_count()) {
  for (std::size_t f : candidates.members()) candidates_.push_back(f);
  if (candidates_.size() > 64) {
    throw PreconditionError("subset oracle supports at most 64 candidate features");
  }
  const std::size_t paths = table.path_count();
  const std::size_t n = candidates_.size();

  base_.assign(paths, 1);
  matching_.resize(paths);
  for (std::size_t k = 0; k < paths; ++k) {
    matching_[k] = table.matching(k);
    for (FeatureId i = 0; i < feature_count_; ++i) {
      if (!candidates.contains(i)) base_[k] *= table.universal_factor(k, i);
    }
  }
  suffix_.assign(n + 1, std::vector<BigInt>(paths, 1));
  for (std::size_t pos = n; pos-- > 0;) {
    for (std::size_t k = 0; k < paths; ++k) {
      suffix_[pos][k] = suffix_[pos + 1][k] * table.universal_factor(k, candidates_[pos]);
    }
  }
  levels_.assign(n + 1, std::vector<BigInt>(paths));
}

FeatureSet SubsetOracle::to_set(std::uint64_t mask) const {
  FeatureSet out(feature_count_);
  for (std::size_t pos = 0; pos < candidates_.size(); ++pos) {
    if ((mask >> pos) & 1U) out.insert(candidates_[pos]);
  }
  return out;
}

std::optional<FeatureSet> SubsetOracle::find(const Threshold &delta, std::size_t max_size) {
  for (std::size_t size = 0; size <= std::min(max_size, candidates_.size()); ++size) {
    if (auto hit = find_of_size(delta, size)) return hit;
  }
  return std::nullopt;
}

std::optional<FeatureSet> SubsetOracle::find_of_size(const Threshold &delta, std::size_t size) {
  if (size > candidates_.size()) return std::nullopt;
  delta_ = &delta;
  levels_[0] = base_;
  if (descend(0, 0, size, 0)) return to_set(found_);
  return std::nullopt;
}

bool SubsetOracle::descend(std::size_t pos, std::size_t chosen, std::size_t size,
                           std::uint64_t mask) {
  const std::size_t n = candidates_.size();
  const std::size_t paths = matching_.size();
  const std::vector<BigInt> &current = levels_[pos];

  if (chosen == size) {
    ++visited_;
    BigInt favourable = 0;
    BigInt total = 0;
    for (std::size_t k = 0; k < paths; ++k) {
      if (current[k] == 0) continue;
      BigInt count = current[k] * suffix_[pos][k];
      if (matching_[k]) favourable += count;
      total += count;
    }
    if (delta_->admits(favourable, total)) {
      found_ = mask;
      return true;
    }
    return false;
  }
  if (n - pos < size - chosen) return false;

  const FeatureId f = candidates_[pos];
  std::vector<BigInt> &next = levels_[pos + 1];

  // Fix the candidate first: lexicographic order among equal-size subsets.
  for (std::size_t k = 0; k < paths; ++k) {
    next[k] = table_->fixed_factor(k, f) == 0 ? BigInt(0) : current[k];
  }
  if (descend(pos + 1, chosen + 1, size, mask | (std::uint64_t{1} << pos))) return true;

  if (n - pos - 1 >= size - chosen) {
    for (std::size_t k = 0; k < paths; ++k) {
      next[k] = current[k] * table_->universal_factor(k, f);
    }
    if (descend(pos + 1, chosen, size, mask)) return true;
  }
  return false;
}

} // namespace paxp
