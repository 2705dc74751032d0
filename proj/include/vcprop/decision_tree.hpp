#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "vcprop/core.hpp"

namespace vcprop {

/// Binary decision tree. Internal nodes test one coordinate (optionally
/// against a threshold in the real variant); leaves carry 0/1.
struct DecisionTree {
  struct Node {
    bool leaf = true;
    std::uint8_t label = 0;
    int coord = -1;
    Rat threshold = 0;   // real variant: go left iff x[coord] < threshold
    int left = -1, right = -1;
  };
  std::vector<Node> nodes;  // nodes[0] is the root when non-empty

  int leaf_count() const {
    int c = 0;
    for (const auto& n : nodes)
      if (n.leaf) ++c;
    return c;
  }
  int internal_count() const { return static_cast<int>(nodes.size()) - leaf_count(); }

  std::uint8_t eval_bits(const BitVec& x) const {
    int cur = 0;
    while (!nodes[cur].leaf) cur = x[nodes[cur].coord] ? nodes[cur].right : nodes[cur].left;
    return nodes[cur].label;
  }
};

namespace detail {

inline int build_bool_rec(const std::vector<BitVec>& pts, const std::vector<std::uint8_t>& labels,
                          std::vector<int> idx, DecisionTree& tree) {
  bool constant = true;
  for (size_t i = 1; i < idx.size(); ++i)
    if (labels[idx[i]] != labels[idx[0]]) constant = false;
  if (constant) {
    tree.nodes.push_back({true, labels[idx[0]], -1, Rat(0), -1, -1});
    return static_cast<int>(tree.nodes.size()) - 1;
  }
  int n = static_cast<int>(pts[idx[0]].size());
  int split = -1;
  for (int c = 0; c < n && split < 0; ++c) {
    bool has0 = false, has1 = false;
    for (int i : idx) (pts[i][c] ? has1 : has0) = true;
    if (has0 && has1) split = c;
  }
  // Distinct points always admit a splitting coordinate.
  std::vector<int> lo, hi;
  for (int i : idx) (pts[i][split] ? hi : lo).push_back(i);
  int self = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({false, 0, split, Rat(0), -1, -1});
  tree.nodes[self].left = build_bool_rec(pts, labels, std::move(lo), tree);
  tree.nodes[self].right = build_bool_rec(pts, labels, std::move(hi), tree);
  return self;
}

}  // namespace detail

/// Consistent tree with at most |points| leaves, by inductive splitting.
inline DecisionTree build_boolean_tree(const std::vector<BitVec>& points,
                                       const std::vector<std::uint8_t>& labels) {
  if (points.size() != labels.size() || points.empty())
    throw std::invalid_argument("build_boolean_tree: bad input");
  std::vector<int> idx(points.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  DecisionTree tree;
  // Build root-last would scramble child indices; recursion appends nodes and
  // the first call owns index 0 only when handled carefully, so rebuild with
  // the root moved to the front.
  DecisionTree tmp;
  int root = detail::build_bool_rec(points, labels, idx, tmp);
  if (root == 0) return tmp;
  // Remap so the root sits at index 0.
  std::vector<int> order;
  order.reserve(tmp.nodes.size());
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    order.push_back(cur);
    if (!tmp.nodes[cur].leaf) {
      stack.push_back(tmp.nodes[cur].right);
      stack.push_back(tmp.nodes[cur].left);
    }
  }
  std::vector<int> pos(tmp.nodes.size(), -1);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  tree.nodes.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    tree.nodes[i] = tmp.nodes[order[i]];
    if (!tree.nodes[i].leaf) {
      tree.nodes[i].left = pos[tree.nodes[i].left];
      tree.nodes[i].right = pos[tree.nodes[i].right];
    }
  }
  return tree;
}

/// Smallest internal-node count of a tree consistent with the labelled
/// points, or nullopt when it exceeds size_budget. Exhaustive over all
/// splitting strategies (memoised on point subsets); an explicit budget
/// guards the search space.
inline std::optional<int> min_tree_size_bruteforce(const std::vector<BitVec>& points,
                                                   const std::vector<std::uint8_t>& labels,
                                                   int size_budget,
                                                   int max_points = 20) {
  if (points.size() != labels.size()) throw std::invalid_argument("min_tree_size: size mismatch");
  int m = static_cast<int>(points.size());
  if (m == 0) return 0;
  if (m > max_points)
    throw BudgetError("min_tree_size_bruteforce: too many points for exact search");
  int n = static_cast<int>(points[0].size());
  std::unordered_map<std::uint64_t, int> memo;
  const int kInf = 1 << 28;

  auto solve = [&](auto&& self, std::uint64_t mask) -> int {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int first = -1;
    bool constant = true;
    for (int i = 0; i < m; ++i) {
      if (!((mask >> i) & 1)) continue;
      if (first < 0)
        first = i;
      else if (labels[i] != labels[first])
        constant = false;
    }
    int best = kInf;
    if (first < 0 || constant) {
      best = 0;
    } else {
      for (int c = 0; c < n; ++c) {
        std::uint64_t lo = 0, hi = 0;
        for (int i = 0; i < m; ++i) {
          if (!((mask >> i) & 1)) continue;
          if (points[i][c])
            hi |= 1ULL << i;
          else
            lo |= 1ULL << i;
        }
        if (lo == 0 || hi == 0) continue;
        int sub = self(self, lo);
        if (sub >= kInf) continue;
        int sub2 = self(self, hi);
        if (sub2 >= kInf) continue;
        best = std::min(best, 1 + sub + sub2);
      }
    }
    memo[mask] = best;
    return best;
  };

  std::uint64_t all = (m == 64) ? ~0ULL : ((1ULL << m) - 1);
  int r = solve(solve, all);
  if (r > size_budget) return std::nullopt;
  return r;
}

}  // namespace vcprop
