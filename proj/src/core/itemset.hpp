#pragma once

#include <cstdint>
#include <vector>

namespace fairorient {

// Bitset over item indices 0..m-1. All instances in this artifact are desk
// scale, but m is not hard-bounded, so the storage is a word vector.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(int universe) : m_(universe), w_((universe + 63) / 64, 0) {}

  int universe() const { return m_; }

  void add(int i) { w_[i >> 6] |= 1ull << (i & 63); }
  void remove(int i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
  bool contains(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  int count() const {
    int c = 0;
    for (auto word : w_) c += __builtin_popcountll(word);
    return c;
  }
  bool empty() const {
    for (auto word : w_)
      if (word) return false;
    return true;
  }

  ItemSet& operator&=(const ItemSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  ItemSet& operator|=(const ItemSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  ItemSet& operator-=(const ItemSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend ItemSet operator&(ItemSet a, const ItemSet& b) { return a &= b; }
  friend ItemSet operator|(ItemSet a, const ItemSet& b) { return a |= b; }
  friend ItemSet operator-(ItemSet a, const ItemSet& b) { return a -= b; }

  bool operator==(const ItemSet& o) const { return w_ == o.w_; }
  bool operator!=(const ItemSet& o) const { return !(*this == o); }

  bool subset_of(const ItemSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const ItemSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int i = 0; i < m_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

 private:
  int m_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace fairorient
