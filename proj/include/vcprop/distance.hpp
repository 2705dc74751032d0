#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "vcprop/classes.hpp"
#include "vcprop/core.hpp"
#include "vcprop/dimension.hpp"
#include "vcprop/rng.hpp"

namespace vcprop {

struct DistanceBudget {
  int max_generic_support = 22;  // 2^support enumeration cap for the generic path
};

namespace detail {

/// Minimum weighted disagreement against sequences with at most `max_blocks`
/// maximal 1-runs (interval unions) or at most `max_alt` alternations.
inline Rat line_distance(const std::vector<Rat>& weights, const std::vector<std::uint8_t>& target,
                         std::optional<int> max_blocks, std::optional<int> max_alt) {
  int m = static_cast<int>(weights.size());
  int cap = max_blocks ? *max_blocks : *max_alt;
  // dp[u][b]: best cost with budget-used u and current value b.
  const Rat kInf = -1;
  auto better = [&](Rat& slot, const Rat& cand) {
    if (slot == kInf || cand < slot) slot = cand;
  };
  std::vector<std::vector<Rat>> dp(cap + 1, std::vector<Rat>(2, kInf));
  dp[0][0] = 0;
  // Starting with value 1 opens a block / costs no alternation.
  if (max_blocks) {
    if (cap >= 1) dp[1][1] = 0;
  } else {
    dp[0][1] = 0;
  }
  // Seed costs for position 0.
  for (int u = 0; u <= cap; ++u)
    for (int b = 0; b < 2; ++b)
      if (dp[u][b] != kInf && b != target[0]) dp[u][b] += weights[0];

  for (int pos = 1; pos < m; ++pos) {
    std::vector<std::vector<Rat>> nx(cap + 1, std::vector<Rat>(2, kInf));
    for (int u = 0; u <= cap; ++u)
      for (int b = 0; b < 2; ++b) {
        if (dp[u][b] == kInf) continue;
        for (int nb = 0; nb < 2; ++nb) {
          int nu = u;
          if (max_blocks) {
            if (b == 0 && nb == 1) nu = u + 1;
          } else if (nb != b) {
            nu = u + 1;
          }
          if (nu > cap) continue;
          Rat cost = dp[u][b];
          if (nb != target[pos]) cost += weights[pos];
          better(nx[nu][nb], cost);
        }
      }
    dp = std::move(nx);
  }
  Rat best = kInf;
  for (int u = 0; u <= cap; ++u)
    for (int b = 0; b < 2; ++b)
      if (dp[u][b] != kInf) better(best, dp[u][b]);
  return best;
}

/// Max-flow (Edmonds-Karp) with exact rational capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : head_(n, -1) {}
  void add_edge(int u, int v, const Rat& cap) {
    edges_.push_back({v, head_[u], cap});
    head_[u] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[v], Rat(0)});
    head_[v] = static_cast<int>(edges_.size()) - 1;
  }
  Rat max_flow(int s, int t) {
    Rat flow = 0;
    for (;;) {
      std::vector<int> pred_edge(head_.size(), -1);
      std::deque<int> queue{s};
      std::vector<char> seen(head_.size(), 0);
      seen[s] = 1;
      while (!queue.empty() && !seen[t]) {
        int u = queue.front();
        queue.pop_front();
        for (int e = head_[u]; e >= 0; e = edges_[e].next) {
          int v = edges_[e].to;
          if (seen[v] || edges_[e].cap <= 0) continue;
          seen[v] = 1;
          pred_edge[v] = e;
          queue.push_back(v);
        }
      }
      if (!seen[t]) return flow;
      Rat push = -1;
      for (int v = t; v != s;) {
        int e = pred_edge[v];
        if (push == -1 || edges_[e].cap < push) push = edges_[e].cap;
        v = edges_[e ^ 1].to;
      }
      for (int v = t; v != s;) {
        int e = pred_edge[v];
        edges_[e].cap -= push;
        edges_[e ^ 1].cap += push;
        v = edges_[e ^ 1].to;
      }
      flow += push;
    }
  }

 private:
  struct Edge {
    int to;
    int next;
    Rat cap;
  };
  std::vector<int> head_;
  std::vector<Edge> edges_;
};

inline Rat monotone_distance(const Poset& poset, const std::vector<int>& elements,
                             const std::vector<std::uint8_t>& labels,
                             const std::vector<Rat>& weights) {
  int m = static_cast<int>(elements.size());
  Rat inf = 1;
  for (const auto& w : weights) inf += w;
  FlowNetwork net(m + 2);
  int s = m, t = m + 1;
  for (int i = 0; i < m; ++i) {
    if (labels[i])
      net.add_edge(s, i, weights[i]);
    else
      net.add_edge(i, t, weights[i]);
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && poset.less(elements[i], elements[j])) net.add_edge(i, j, inf);
  return net.max_flow(s, t);
}

inline Rat junta_distance(const FiniteDomain& dom, const std::vector<int>& support,
                          const std::vector<std::uint8_t>& f, const std::vector<Rat>& weights,
                          int n, int k) {
  if (k >= n) return 0;
  std::vector<int> J(k);
  std::iota(J.begin(), J.end(), 0);
  std::optional<Rat> best;
  for (;;) {
    std::map<std::vector<std::uint8_t>, std::pair<Rat, Rat>> rows;  // key -> (mass0, mass1)
    for (size_t i = 0; i < support.size(); ++i) {
      const auto& p = dom.bit_point(support[i]);
      std::vector<std::uint8_t> key(k);
      for (int j = 0; j < k; ++j) key[j] = p[J[j]];
      auto& slot = rows[key];
      (f[i] ? slot.second : slot.first) += weights[i];
    }
    Rat cost = 0;
    for (auto& [key, masses] : rows) cost += std::min(masses.first, masses.second);
    if (!best || cost < *best) best = cost;
    if (*best == 0) return 0;
    int i = k - 1;
    while (i >= 0 && J[i] == n - k + i) --i;
    if (i < 0) break;
    ++J[i];
    for (int j = i + 1; j < k; ++j) J[j] = J[j - 1] + 1;
  }
  return *best;
}

}  // namespace detail

/// inf over class members h of Pr_{x~D}[f(x) != h(x)], exact. Uses a
/// closed form or dynamic program where the class structure admits one and
/// otherwise enumerates all labellings of the support.
inline Rat exact_distance(const Labelling& f, const FunctionClass& cls, const FiniteDistribution& D,
                          DistanceBudget budget = {}) {
  const FiniteDomain& dom = D.domain();
  if (f.size() != dom.size()) throw DomainError("exact_distance: labelling size mismatch");
  const auto& support = D.support();
  int m = static_cast<int>(support.size());
  std::vector<Rat> weights(m);
  std::vector<std::uint8_t> target(m);
  for (int i = 0; i < m; ++i) {
    weights[i] = D.weight(support[i]);
    target[i] = f[support[i]];
  }
  using K = FunctionClass::Kind;
  switch (cls.kind) {
    case K::IntervalUnion:
    case K::Alternating:
    case K::HalfspaceIntersection:
    case K::RealDecisionTree: {
      Oracle oracle(cls, dom);  // validates the domain shape
      // Order the support along the line.
      std::vector<int> pos(m);
      std::iota(pos.begin(), pos.end(), 0);
      std::sort(pos.begin(), pos.end(),
                [&](int a, int b) { return oracle.line_rank(support[a]) < oracle.line_rank(support[b]); });
      std::vector<Rat> w(m);
      std::vector<std::uint8_t> t(m);
      for (int i = 0; i < m; ++i) {
        w[i] = weights[pos[i]];
        t[i] = target[pos[i]];
      }
      if (cls.kind == K::IntervalUnion) return detail::line_distance(w, t, cls.k, std::nullopt);
      return detail::line_distance(w, t, std::nullopt, oracle.alternation_bound());
    }
    case K::Junta: {
      Oracle oracle(cls, dom);
      return detail::junta_distance(dom, support, target, weights, cls.n, cls.k);
    }
    case K::Monotone: {
      Oracle oracle(cls, dom);
      std::vector<int> elems(m);
      for (int i = 0; i < m; ++i) elems[i] = dom.index_point(support[i]);
      return detail::monotone_distance(dom.poset(), elems, target, weights);
    }
    case K::SymmetricThreshold: {
      Oracle oracle(cls, dom);
      std::vector<Rat> one_weights;
      for (int i = 0; i < m; ++i)
        if (target[i]) one_weights.push_back(weights[i]);
      int excess = static_cast<int>(one_weights.size()) - cls.k;
      if (excess <= 0) return 0;
      std::sort(one_weights.begin(), one_weights.end());
      Rat cost = 0;
      for (int i = 0; i < excess; ++i) cost += one_weights[i];
      return cost;
    }
    default: {
      if (m > budget.max_generic_support)
        throw BudgetError("exact_distance: support too large for generic enumeration");
      Oracle oracle(cls, dom);
      std::optional<Rat> best;
      std::vector<std::uint8_t> labels(m);
      for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        for (int i = 0; i < m; ++i) labels[i] = (mask >> i) & 1;
        if (!oracle.consistent(support, labels)) continue;
        Rat cost = 0;
        for (int i = 0; i < m; ++i)
          if (labels[i] != target[i]) cost += weights[i];
        if (!best || cost < *best) {
          best = cost;
          if (*best == 0) return 0;
        }
      }
      if (!best) throw std::runtime_error("exact_distance: class realises no labelling on support");
      return *best;
    }
  }
}

struct FarnessReport {
  int trials = 0;
  double epsilon = 0;
  double far_fraction = 0;
  int domain_size = 0;
  int class_vc = -1;
};

/// Draws uniformly random labellings of T and reports the fraction whose
/// exact distance to the class (under uniform weights on T) exceeds eps.
inline FarnessReport random_far_fraction(const FunctionClass& cls, const FiniteDomain& T,
                                         double epsilon, int trials, std::uint64_t seed,
                                         DistanceBudget budget = {}) {
  FiniteDistribution uniform = FiniteDistribution::uniform(std::make_shared<FiniteDomain>(T));
  Rat eps = rat_from_double(epsilon);
  int far = 0;
  int n = T.size();
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<std::uint8_t> bits(n);
    for (int i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>(rng.next() & 1);
    Labelling f(std::move(bits));
    if (exact_distance(f, cls, uniform, budget) > eps) ++far;
  }
  FarnessReport rep;
  rep.trials = trials;
  rep.epsilon = epsilon;
  rep.far_fraction = trials ? static_cast<double>(far) / trials : 0.0;
  rep.domain_size = n;
  try {
    Oracle oracle(cls, T);
    rep.class_vc = vc_dim(oracle);
  } catch (const BudgetError&) {
    rep.class_vc = -1;
  }
  return rep;
}

}  // namespace vcprop
