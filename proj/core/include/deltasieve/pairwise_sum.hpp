#pragma once

#include <cstddef>
#include <vector>

namespace deltasieve {

// Streaming pairwise summation. Terms are summed naively in blocks of
// kBlock, and block sums are merged like a binary counter, so the result
// depends only on the order of add() calls.
template <class T>
class PairwiseSum {
 public:
  static constexpr std::size_t kBlock = 32;

  void add(const T& x) {
    block_ += x;
    ++count_;
    if (++in_block_ == kBlock) {
      push(block_, 0);
      block_ = T{};
      in_block_ = 0;
    }
  }

  T total() const {
    T acc = block_;
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) acc = it->value + acc;
    return acc;
  }

  std::size_t count() const { return count_; }

  // Worst-case relative rounding factor, in units of epsilon times the sum of |terms|.
  static double error_factor(std::size_t n) {
    double levels = 0;
    for (std::size_t m = n / kBlock; m > 0; m >>= 1) levels += 1;
    return static_cast<double>(kBlock) + levels + 2.0;
  }

 private:
  struct Node {
    T value;
    int level;
  };
  void push(T value, int level) {
    while (!stack_.empty() && stack_.back().level == level) {
      value = stack_.back().value + value;
      stack_.pop_back();
      ++level;
    }
    stack_.push_back({value, level});
  }

  std::vector<Node> stack_;
  T block_{};
  std::size_t in_block_ = 0;
  std::size_t count_ = 0;
};

// Fixed binary-tree reduction over an indexed sequence.
template <class T>
T tree_reduce(const std::vector<T>& xs) {
  if (xs.empty()) return T{};
  std::vector<T> level = xs;
  while (level.size() > 1) {
    std::vector<T> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

}  // namespace deltasieve
