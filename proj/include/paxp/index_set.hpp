#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace paxp {

// Fixed-universe bitset over indices [0, universe). The Tag parameter keeps
// feature sets and domain value sets from being mixed up.
template <class Tag>
class IndexSet {
public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> members)
      : IndexSet(universe) {
    for (std::size_t m : members) insert(m);
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  static IndexSet from(std::size_t universe, const std::vector<std::size_t> &members) {
    IndexSet s(universe);
    for (std::size_t m : members) s.insert(m);
    return s;
  }

  std::size_t universe() const { return universe_; }

  void insert(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void erase(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool contains(std::size_t i) const {
    return i < universe_ && ((words_[i / 64] >> (i % 64)) & 1U) != 0;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (std::uint64_t w : words_)
      if (w != 0) return false;
    return true;
  }

  IndexSet intersect(const IndexSet &other) const {
    IndexSet out(universe_);
    for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i)
      out.words_[i] = words_[i] & other.words_[i];
    return out;
  }
  IndexSet without(std::size_t i) const {
    IndexSet out = *this;
    out.erase(i);
    return out;
  }
  IndexSet with(std::size_t i) const {
    IndexSet out = *this;
    out.insert(i);
    return out;
  }
  IndexSet complement() const {
    IndexSet out(universe_);
    for (std::size_t i = 0; i < universe_; ++i)
      if (!contains(i)) out.insert(i);
    return out;
  }
  bool disjoint(const IndexSet &other) const { return intersect(other).empty(); }
  bool subset_of(const IndexSet &other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t theirs = i < other.words_.size() ? other.words_[i] : 0;
      if ((words_[i] & ~theirs) != 0) return false;
    }
    return true;
  }

  IndexSet &operator|=(const IndexSet &other) {
    for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i)
      words_[i] |= other.words_[i];
    return *this;
  }

  // Members in ascending order.
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  friend bool operator==(const IndexSet &, const IndexSet &) = default;

  // Lexicographic order on the ascending member sequences.
  friend bool lex_less(const IndexSet &a, const IndexSet &b) {
    auto x = a.members();
    auto y = b.members();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }

private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ValueTag;
struct FeatureTag;

using ValueSet = IndexSet<ValueTag>;
using FeatureSet = IndexSet<FeatureTag>;

} // namespace paxp
