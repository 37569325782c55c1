#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cutsparse {

/// Raised when find/unite touch an element that was never created.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Disjoint-set forest with union by rank and path compression. Elements are
// dense integer ids created lazily by make_set; the backing arrays grow on
// demand so untouched ids cost nothing but their slot.
class ForestDsu {
 public:
  using Id = std::uint32_t;

  ForestDsu() = default;

  void reserve(std::size_t n) {
    parent_.reserve(n);
    rank_.reserve(n);
  }

  bool contains(Id x) const { return x < parent_.size() && parent_[x] != kAbsent; }

  void make_set(Id x) {
    if (x >= parent_.size()) {
      parent_.resize(std::size_t{x} + 1, kAbsent);
      rank_.resize(std::size_t{x} + 1, 0);
    }
    if (parent_[x] != kAbsent) throw ContractViolation("make_set: element already exists");
    parent_[x] = x;
    rank_[x] = 0;
  }

  Id find(Id x) {
    require(x);
    Id root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  // Returns false when x and y were already in the same set.
  bool unite(Id x, Id y) {
    Id a = find(x);
    Id b = find(y);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  bool same(Id x, Id y) { return find(x) == find(y); }

 private:
  static constexpr Id kAbsent = std::numeric_limits<Id>::max();

  void require(Id x) const {
    if (!contains(x)) throw ContractViolation("element " + std::to_string(x) + " was never created");
  }

  std::vector<Id> parent_;
  std::vector<std::uint8_t> rank_;
};

// Linked-list representation: every element stores its set id (the list
// head) directly, so find is O(1); unite relabels the shorter list.
class LinkedListDsu {
 public:
  using Id = std::uint32_t;

  LinkedListDsu() = default;

  bool contains(Id x) const { return x < head_.size() && head_[x] != kAbsent; }

  void make_set(Id x) {
    if (x >= head_.size()) {
      const std::size_t n = std::size_t{x} + 1;
      head_.resize(n, kAbsent);
      next_.resize(n, kAbsent);
      tail_.resize(n, kAbsent);
      size_.resize(n, 0);
    }
    if (head_[x] != kAbsent) throw ContractViolation("make_set: element already exists");
    head_[x] = x;
    next_[x] = kAbsent;
    tail_[x] = x;
    size_[x] = 1;
  }

  Id find(Id x) const {
    if (!contains(x)) throw ContractViolation("element " + std::to_string(x) + " was never created");
    return head_[x];
  }

  bool unite(Id x, Id y) {
    Id a = find(x);
    Id b = find(y);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    for (Id cur = b; cur != kAbsent; cur = next_[cur]) head_[cur] = a;
    next_[tail_[a]] = b;
    tail_[a] = tail_[b];
    size_[a] += size_[b];
    size_[b] = 0;
    return true;
  }

  bool same(Id x, Id y) const { return find(x) == find(y); }

  std::uint32_t set_size(Id x) const { return size_[find(x)]; }

 private:
  static constexpr Id kAbsent = std::numeric_limits<Id>::max();

  std::vector<Id> head_;
  std::vector<Id> next_;
  std::vector<Id> tail_;
  std::vector<std::uint32_t> size_;
};

}  // namespace cutsparse
