#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "vcprop/classes.hpp"
#include "vcprop/core.hpp"
#include "vcprop/lp.hpp"
#include "vcprop/meb.hpp"
#include "vcprop/rng.hpp"

namespace vcprop {

struct TesterConfig {
  double epsilon = 0.1;
  std::optional<int> m_override;
  std::optional<int> s_override;
  std::uint64_t seed = 0;
};

struct Witness {
  std::string kind;
  std::vector<int> indices;                  // sample or constraint indices
  std::vector<std::pair<int, int>> pairs;    // conflicting / violating pairs
};

struct Verdict {
  bool accept = true;
  int samples_used = 0;
  std::optional<Witness> witness;
};

// ---------------------------------------------------------------------------
// Consistency (epsilon-net) tester: accept iff some class member agrees with
// the whole labelled sample. One-sided by construction.

inline int one_sided_sample_size(int d, double eps) {
  return static_cast<int>(std::ceil((8.0 / eps) * (d * std::log(16.0 / eps) + std::log(3.0))));
}

inline Verdict one_sided_vc_test(const FunctionClass& cls, const FiniteDomain& base,
                                 const std::vector<std::pair<int, std::uint8_t>>& sample,
                                 const TesterConfig& cfg = {}) {
  (void)cfg;
  Verdict v;
  v.samples_used = static_cast<int>(sample.size());
  std::map<int, std::uint8_t> seen;
  for (const auto& [idx, bit] : sample) {
    auto [it, inserted] = seen.emplace(idx, bit);
    if (!inserted && it->second != bit) {
      v.accept = false;
      v.witness = Witness{"conflicting-sample-labels", {idx}, {}};
      return v;
    }
  }
  std::vector<int> idx;
  std::vector<std::uint8_t> labels;
  for (auto [i, b] : seen) {
    idx.push_back(i);
    labels.push_back(b);
  }
  Oracle oracle(cls, base);
  if (oracle.consistent(idx, labels)) return v;
  v.accept = false;
  v.witness = Witness{"inconsistent-sample", idx, {}};
  return v;
}

// ---------------------------------------------------------------------------
// k-junta tester: reject iff every candidate coordinate set is refuted by a
// pair of samples that agree on it but carry different labels.

struct JuntaSizes {
  int repetitions = 1;  // s
  int per_repetition = 1;  // m
  int total() const { return repetitions * per_repetition; }
};

inline JuntaSizes junta_default_sizes(int n, int k, double eps) {
  double cnk = to_double(Rat(binomial(n, k)));
  int s = static_cast<int>(std::ceil(std::log(3.0 * cnk) / std::log(5.0 / 4.0)));
  s = std::max(s, 1);
  double m = (2.0 / eps) * (1.0 + std::sqrt(std::pow(2.0, k + 1) * std::log(2.0))) + 24.0 / eps;
  return {s, static_cast<int>(std::ceil(m))};
}

inline Verdict junta_test(int n, int k, const std::vector<std::pair<BitVec, std::uint8_t>>& sample,
                          const TesterConfig& cfg = {}) {
  (void)cfg;
  Verdict v;
  v.samples_used = static_cast<int>(sample.size());
  std::map<BitVec, std::uint8_t> distinct;
  for (const auto& [p, bit] : sample) {
    auto [it, inserted] = distinct.emplace(p, bit);
    if (!inserted && it->second != bit) {
      v.accept = false;
      v.witness = Witness{"witness-pair", {}, {}};
      return v;
    }
  }
  if (k >= n) return v;
  std::vector<BitVec> pts;
  std::vector<std::uint8_t> labels;
  for (auto& [p, b] : distinct) {
    pts.push_back(p);
    labels.push_back(b);
  }
  std::vector<int> J(k);
  for (int i = 0; i < k; ++i) J[i] = i;
  std::pair<int, int> last_pair{-1, -1};
  for (;;) {
    // Find a refuting pair for this candidate set.
    std::map<std::vector<std::uint8_t>, int> rows;
    bool refuted = false;
    for (int i = 0; i < static_cast<int>(pts.size()) && !refuted; ++i) {
      std::vector<std::uint8_t> key(k);
      for (int j = 0; j < k; ++j) key[j] = pts[i][J[j]];
      auto [it, inserted] = rows.emplace(std::move(key), i);
      if (!inserted && labels[it->second] != labels[i]) {
        refuted = true;
        last_pair = {it->second, i};
      }
    }
    if (!refuted) return v;  // some candidate survives: accept
    int i = k - 1;
    while (i >= 0 && J[i] == n - k + i) --i;
    if (i < 0) break;
    ++J[i];
    for (int j = i + 1; j < k; ++j) J[j] = J[j - 1] + 1;
  }
  v.accept = false;
  v.witness = Witness{"witness-pair", {}, {last_pair}};
  return v;
}

// ---------------------------------------------------------------------------
// Monotonicity on general posets through the two-copy bipartite reduction.

struct BipartiteInstance {
  std::shared_ptr<const Poset> poset;              // bipartite order on 2n elements
  std::shared_ptr<const FiniteDomain> domain;      // all 2n elements
  FiniteDistribution q;                            // halved densities on both copies
  Labelling g;                                     // f copied onto both copies
};

inline BipartiteInstance bipartite_reduce(const std::shared_ptr<const Poset>& poset,
                                          const FiniteDistribution& D, const Labelling& f) {
  int n = poset->size();
  if (D.domain().kind() != DomainKind::PosetElems || D.domain().size() != n)
    throw DomainError("bipartite_reduce: distribution must cover the whole poset");
  for (int x = 0; x < n; ++x)
    if (D.domain().index_point(x) != x)
      throw DomainError("bipartite_reduce: domain must list poset elements in order");
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (poset->less(x, y)) edges.emplace_back(x, y);
  auto bip = std::make_shared<Poset>(Poset::bipartite(n, edges));
  auto dom = std::make_shared<FiniteDomain>(FiniteDomain::poset_all(bip));
  std::vector<Rat> w(2 * n);
  std::vector<std::uint8_t> labels(2 * n);
  for (int x = 0; x < n; ++x) {
    // Domain order of poset_all is element order, so copy i of x sits at x + i*n.
    w[x] = D.weight(x) / 2;
    w[n + x] = D.weight(x) / 2;
    labels[x] = f[x];
    labels[n + x] = f[x];
  }
  return BipartiteInstance{bip, dom, FiniteDistribution(dom, std::move(w)), Labelling(std::move(labels))};
}

inline int monotone_sample_size(int n, double eps) {
  return static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(n)) / eps));
}

inline Verdict monotone_test(const std::shared_ptr<const Poset>& poset, const FiniteDistribution& D,
                             const Labelling& f, const TesterConfig& cfg = {}) {
  int n = poset->size();
  auto bip = bipartite_reduce(poset, D, f);
  int m = cfg.m_override.value_or(monotone_sample_size(n, cfg.epsilon));
  auto draws = bip.q.sample(m, cfg.seed);
  Verdict v;
  v.samples_used = m;
  std::vector<char> in_x(n, 0), in_y(n, 0);
  for (int idx : draws) {
    if (idx < n)
      in_x[idx] = 1;
    else
      in_y[idx - n] = 1;
  }
  for (int x = 0; x < n; ++x) {
    if (!in_x[x] || bip.g[x] != 1) continue;
    for (int y = 0; y < n; ++y) {
      if (!in_y[y] || bip.g[n + y] != 0) continue;
      if (poset->less(x, y)) {
        v.accept = false;
        v.witness = Witness{"violating-pair", {}, {{x, y}}};
        return v;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Symmetric-class tester over [n]: estimate the fraction of ones.

inline int symmetric_sample_size(double eps) {
  return static_cast<int>(std::ceil(50.0 / (eps * eps) * std::log(3.0)));
}

/// Tester for "at most floor(n/5) ones" exactly as printed: m uniform
/// queries, reject iff the one-count exceeds (1 + eps/2) m / 5.
inline Verdict symmetric_test(int n, const std::vector<std::uint8_t>& f, const TesterConfig& cfg) {
  if (static_cast<int>(f.size()) != n) throw std::invalid_argument("symmetric_test: size mismatch");
  int m = cfg.m_override.value_or(symmetric_sample_size(cfg.epsilon));
  Rng rng(cfg.seed);
  long long ones = 0;
  for (int i = 0; i < m; ++i) ones += f[rng.below_int(n)];
  Verdict v;
  v.samples_used = m;
  v.accept = !(static_cast<double>(ones) > (1.0 + cfg.epsilon / 2.0) * m / 5.0);
  return v;
}

/// Extension beyond the paper-scale threshold n/5: an arbitrary ones budget
/// t with rejection cutoff (1 + eps/2) t m / n.
inline Verdict symmetric_test_threshold(int n, int t, const std::vector<std::uint8_t>& f,
                                        const TesterConfig& cfg) {
  if (static_cast<int>(f.size()) != n) throw std::invalid_argument("symmetric_test: size mismatch");
  int m = cfg.m_override.value_or(symmetric_sample_size(cfg.epsilon));
  Rng rng(cfg.seed);
  long long ones = 0;
  for (int i = 0; i < m; ++i) ones += f[rng.below_int(n)];
  Verdict v;
  v.samples_used = m;
  v.accept = !(static_cast<double>(ones) >
               (1.0 + cfg.epsilon / 2.0) * static_cast<double>(t) * m / n);
  return v;
}

// ---------------------------------------------------------------------------
// Two-sided support-size distinguisher from pair collisions.

enum class SupportSide { Small, Large };

inline int birthday_sample_size(int d) {
  return static_cast<int>(std::ceil(8.0 * std::sqrt(static_cast<double>(d))));
}

/// Collision threshold separating uniform support <= d from >= 3d: the
/// midpoint of the two expected pair-collision counts.
inline double birthday_threshold(int m, int d) {
  double pairs = 0.5 * m * (m - 1.0);
  return 0.5 * (pairs / d + pairs / (3.0 * d));
}

inline SupportSide birthday_ssd(const std::vector<int>& samples, int d) {
  std::map<int, long long> counts;
  for (int s : samples) ++counts[s];
  long long collisions = 0;
  for (auto& [k, c] : counts) collisions += c * (c - 1) / 2;
  double theta = birthday_threshold(static_cast<int>(samples.size()), d);
  return collisions > theta ? SupportSide::Small : SupportSide::Large;
}

// ---------------------------------------------------------------------------
// LP feasibility tester: sample constraints, accept iff the sampled
// subsystem is feasible (exact).

inline int lp_sample_size(int n, double eps) {
  return static_cast<int>(std::ceil(4.0 * n / eps));
}

inline Verdict lp_feasibility_test(int nvars, const std::vector<LinCon>& constraints,
                                   const TesterConfig& cfg) {
  Verdict v;
  if (constraints.empty()) return v;
  int m = cfg.m_override.value_or(lp_sample_size(nvars, cfg.epsilon));
  v.samples_used = m;
  Rng rng(cfg.seed);
  std::vector<char> chosen(constraints.size(), 0);
  for (int i = 0; i < m; ++i) chosen[rng.below(constraints.size())] = 1;
  std::vector<LinCon> sub;
  std::vector<int> idx;
  for (size_t i = 0; i < constraints.size(); ++i)
    if (chosen[i]) {
      sub.push_back(constraints[i]);
      idx.push_back(static_cast<int>(i));
    }
  if (lp_feasible(nvars, sub).feasible) return v;
  v.accept = false;
  v.witness = Witness{"infeasible-subsystem", idx, {}};
  return v;
}

// ---------------------------------------------------------------------------
// Clusterability: exact cover check plus the one-sided sampling tester.

namespace detail {

inline double dist2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

/// Smallest number of unit balls covering the points, capped at kmax.
/// Recursive partition search with a work budget.
inline int min_unit_balls(const std::vector<std::vector<double>>& pts, int kmax, long long& ops) {
  const double kTol = 1e-9;
  int m = static_cast<int>(pts.size());
  if (m == 0) return 0;
  std::vector<std::vector<int>> groups;
  int best = kmax + 1;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(groups.size()) >= best) return;
    if (--ops < 0) throw BudgetError("cluster_cover_check: partition search budget exceeded");
    if (next == m) {
      best = std::min(best, static_cast<int>(groups.size()));
      return;
    }
    for (auto& g : groups) {
      g.push_back(next);
      std::vector<std::vector<double>> sub;
      for (int i : g) sub.push_back(pts[i]);
      if (min_enclosing_ball(sub).radius <= 1.0 + kTol) self(self, next + 1);
      g.pop_back();
    }
    if (static_cast<int>(groups.size()) < std::min(best - 1, kmax)) {
      groups.push_back({next});
      self(self, next + 1);
      groups.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace detail

/// Whether the points fit in a union of k unit balls. For k >= 2 the points
/// are first split into components at inter-point distance 2 (no unit ball
/// spans a gap larger than 2), then each component is solved exactly under
/// a search budget.
inline bool cluster_cover_check(const std::vector<std::vector<double>>& points, int k,
                                long long budget = 2000000) {
  if (k < 1) throw std::invalid_argument("cluster_cover_check: k must be positive");
  if (points.empty()) return true;
  const double kTol = 1e-9;
  if (k == 1) return min_enclosing_ball(points).radius <= 1.0 + kTol;
  int m = static_cast<int>(points.size());
  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < m; ++v)
        if (comp[v] < 0 && detail::dist2(points[u], points[v]) <= 4.0 + kTol) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }
  if (ncomp > k) return false;
  long long ops = budget;
  int used = 0;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<std::vector<double>> sub;
    for (int i = 0; i < m; ++i)
      if (comp[i] == c) sub.push_back(points[i]);
    int avail = k - used - (ncomp - c - 1);  // leave one ball per remaining component
    int need = detail::min_unit_balls(sub, avail, ops);
    if (need > avail) return false;
    used += need;
  }
  return used <= k;
}

inline int cluster_sample_size(int n, int k, double eps) {
  double m = 4.0 * (n * k * std::log(k + 1.0) / eps) * std::log(std::numbers::e / eps);
  return static_cast<int>(std::ceil(m));
}

/// One-sided distribution-free clusterability tester: sample and accept iff
/// the sample fits in k unit balls.
inline Verdict cluster_test(const std::function<std::vector<double>(Rng&)>& sampler, int n, int k,
                            const TesterConfig& cfg) {
  int m = cfg.m_override.value_or(cluster_sample_size(n, k, cfg.epsilon));
  Rng rng(cfg.seed);
  std::vector<std::vector<double>> pts;
  pts.reserve(m);
  for (int i = 0; i < m; ++i) pts.push_back(sampler(rng));
  Verdict v;
  v.samples_used = m;
  if (cluster_cover_check(pts, k)) return v;
  v.accept = false;
  v.witness = Witness{"uncovered-sample", {}, {}};
  return v;
}

}  // namespace vcprop
