#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vcprop/classes.hpp"
#include "vcprop/core.hpp"
#include "vcprop/dimension.hpp"
#include "vcprop/linalg.hpp"
#include "vcprop/lp.hpp"
#include "vcprop/rng.hpp"

namespace vcprop {

enum class InstanceSide { Yes, No };

struct SsdParams {
  int n = 0;             // ground-set size
  double alpha = 0.0;    // yes-side support fraction
  double beta = 1.0;     // no-side support fraction
  int multiplier = 4;    // K in beta*n = K*vc instantiations

  void validate() const {
    if (n <= 0) throw std::invalid_argument("SsdParams: n must be positive");
    if (!(alpha > 0.0 && alpha < beta && beta <= 1.0))
      throw std::invalid_argument("SsdParams: need 0 < alpha < beta <= 1");
  }
  int yes_support() const { return static_cast<int>(std::floor(alpha * n)); }
  int no_support() const { return static_cast<int>(std::ceil(beta * n)); }
};

struct SsdInstance {
  InstanceSide side = InstanceSide::Yes;
  FiniteDistribution distribution;  // over the target set (bijection applied)
  Labelling labelling;              // random labels on the whole set
  std::vector<int> support;         // domain indices carrying weight
  std::uint64_t seed = 0;
};

/// Support-size-distinction reduction instance over a fixed set S: a
/// uniform distribution on a random support of the prescribed size plus a
/// uniformly random labelling. Yes-side soundness requires every subset of
/// the support size to be shattered; the check is an LVC computation whose
/// certificate is surfaced on failure.
inline SsdInstance ssd_instance(const FunctionClass& cls,
                                const std::shared_ptr<const FiniteDomain>& S, InstanceSide side,
                                const SsdParams& params, std::uint64_t seed,
                                std::optional<int> known_lvc = std::nullopt,
                                DimensionBudget budget = {}) {
  params.validate();
  if (S->size() != params.n) throw std::invalid_argument("ssd_instance: |S| != n");
  int support_size = side == InstanceSide::Yes ? params.yes_support() : params.no_support();
  if (support_size <= 0) throw std::invalid_argument("ssd_instance: empty support");
  if (side == InstanceSide::Yes) {
    int lvc = known_lvc ? *known_lvc : 0;
    if (!known_lvc) {
      Oracle oracle(cls, *S);
      ShatterCertificate cert;
      lvc = lvc_dim(oracle, budget, &cert);
      if (lvc < support_size) {
        std::string msg = "ssd_instance: yes side requires every " +
                          std::to_string(support_size) +
                          "-subset shattered, but lvc=" + std::to_string(lvc) +
                          "; unshattered subset {";
        for (size_t i = 0; i < cert.subset.size(); ++i)
          msg += (i ? "," : "") + std::to_string(cert.subset[i]);
        msg += "}";
        throw std::invalid_argument(msg);
      }
    } else if (lvc < support_size) {
      throw std::invalid_argument("ssd_instance: yes side violates the shattering precondition");
    }
  }
  Rng rng(seed);
  auto support = rng.distinct(params.n, support_size);
  std::sort(support.begin(), support.end());
  std::vector<std::uint8_t> labels(params.n);
  for (auto& b : labels) b = static_cast<std::uint8_t>(rng.next() & 1);
  SsdInstance inst{side, FiniteDistribution::uniform_on(S, support), Labelling(std::move(labels)),
                   support, seed};
  return inst;
}

/// Points in general position: the standard power curve (x, x^2, ..., x^n)
/// at x = 1..size, exact. Every (n+1)-subset is affinely independent by the
/// Vandermonde determinant.
inline FiniteDomain general_position_set(int n, int size) {
  std::vector<RealVec> pts;
  pts.reserve(size);
  for (int i = 1; i <= size; ++i) {
    RealVec v(n);
    Rat p = 1;
    for (int j = 0; j < n; ++j) {
      p *= i;
      v[j] = p;
    }
    pts.push_back(std::move(v));
  }
  if (n == 1) {
    std::vector<Rat> xs;
    for (auto& v : pts) xs.push_back(v[0]);
    return FiniteDomain::real_line(std::move(xs));
  }
  return FiniteDomain::real_space(std::move(pts));
}

/// Colinear parameters 1..size pushed through the embedding used by the
/// halfspace-intersection oracle.
inline FiniteDomain moment_curve_domain(int n, int size) {
  std::vector<RealVec> pts;
  pts.reserve(size);
  for (int i = 1; i <= size; ++i) pts.push_back(moment_curve_embed(Rat(i), n));
  return FiniteDomain::real_space(std::move(pts));
}

struct RankCheckResult {
  int trials = 0;
  int full_rank = 0;
  double fraction = 0.0;
};

/// Empirical probability that the multilinear feature vectors of m uniform
/// +-1 points are linearly independent (exact integer rank).
inline RankCheckResult cube_rank_check(int n, int k, int m, int trials, std::uint64_t seed) {
  Int dim = binomial_le(n, k);
  if (dim > 4096) throw BudgetError("cube_rank_check: feature dimension too large");
  RankCheckResult res;
  res.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<std::vector<Int>> rows;
    rows.reserve(m);
    for (int i = 0; i < m; ++i) {
      std::vector<int> x(n);
      for (int j = 0; j < n; ++j) x[j] = (rng.next() & 1) ? 1 : -1;
      auto emb = monomial_embed(x, k);
      std::vector<Int> row(emb.size());
      for (size_t j = 0; j < emb.size(); ++j) row[j] = emb[j];
      rows.push_back(std::move(row));
    }
    if (integer_rank(std::move(rows)) == m) ++res.full_rank;
  }
  res.fraction = trials ? static_cast<double>(res.full_rank) / trials : 0.0;
  return res;
}

/// Largest sample count m for which the independence bound holds with
/// failure probability 2^-t: C(n - ceil(log2 C(n,<=k)) - t, <=k) - 1 is the
/// last size strictly below the bound.
inline Int asw_sample_bound(int n, int k, int t) {
  Int d = binomial_le(n, k);
  int log_d = 0;
  while ((Int(1) << log_d) < d) ++log_d;
  int inner = n - log_d - t;
  if (inner < 0) return 0;
  return binomial_le(inner, k);
}

/// Probability that t uniform points on the sphere in R^n fall in a common
/// hemisphere: 2^{1-t} sum_{i<n} C(t-1, i), exact.
inline Rat wendel_probability(int t, int n) {
  if (t < 1 || n < 1) throw std::invalid_argument("wendel_probability: t, n must be positive");
  Int sum = 0;
  for (int i = 0; i <= n - 1; ++i) sum += binomial(t - 1, i);
  return Rat(sum) / Rat(Int(1) << (t - 1));
}

struct ClusterInstance {
  int dim = 0;
  double eta = 0.0;
  std::vector<std::vector<double>> centers;
  std::vector<std::vector<double>> points;
  std::vector<int> sphere_of;  // mixture component of each point
};

/// Mixture of k spheres of radius 1+eta with surface separation >= 3:
/// centers 3*(i+1) along distinct axes. Yes side draws m <= nk/2 points,
/// no side m >= 2n for k=1 and 4nk <= m <= 8nk otherwise.
inline ClusterInstance cluster_instance(int n, int k, double eta, int m, InstanceSide side,
                                        std::uint64_t seed) {
  if (k < 1 || n < 1) throw std::invalid_argument("cluster_instance: bad n or k");
  if (k > n) throw std::invalid_argument("cluster_instance: needs k <= n for the axis layout");
  if (10.0 * k >= std::exp(n / 6.0))
    throw std::invalid_argument("cluster_instance: k too large for the sphere count bound");
  if (side == InstanceSide::Yes) {
    if (2 * m > n * k) throw std::invalid_argument("cluster_instance: yes side needs m <= nk/2");
  } else {
    if (k == 1) {
      if (m < 2 * n) throw std::invalid_argument("cluster_instance: no side needs m >= 2n");
    } else if (m < 4 * n * k || m > 8 * n * k) {
      throw std::invalid_argument("cluster_instance: no side needs 4nk <= m <= 8nk");
    }
  }
  ClusterInstance inst;
  inst.dim = n;
  inst.eta = eta;
  for (int i = 0; i < k; ++i) {
    std::vector<double> c(n, 0.0);
    c[i] = 3.0 * (i + 1);
    inst.centers.push_back(std::move(c));
  }
  Rng rng(seed);
  for (int t = 0; t < m; ++t) {
    int i = rng.below_int(k);
    auto x = sphere_point(rng, n, 1.0 + eta);
    for (int j = 0; j < n; ++j) x[j] += inst.centers[i][j];
    inst.points.push_back(std::move(x));
    inst.sphere_of.push_back(i);
  }
  return inst;
}

struct LoadCheckResult {
  int trials = 0;
  double p_upper = 0.0;  // every bin at most (1+delta) C n
  double p_lower = 0.0;  // every bin at least (1-delta) C n
};

inline LoadCheckResult balls_in_bins_check(double c_load, int n, int k, double delta, int trials,
                                           std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("balls_in_bins_check: k must be positive");
  long long balls = std::llround(c_load * n * k);
  double mean = c_load * n;
  int upper_ok = 0, lower_ok = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<long long> load(k, 0);
    for (long long b = 0; b < balls; ++b) ++load[rng.below_int(k)];
    long long mx = load[0], mn = load[0];
    for (long long L : load) {
      mx = std::max(mx, L);
      mn = std::min(mn, L);
    }
    if (static_cast<double>(mx) <= (1.0 + delta) * mean) ++upper_ok;
    if (static_cast<double>(mn) >= (1.0 - delta) * mean) ++lower_ok;
  }
  LoadCheckResult r;
  r.trials = trials;
  r.p_upper = trials ? static_cast<double>(upper_ok) / trials : 0.0;
  r.p_lower = trials ? static_cast<double>(lower_ok) / trials : 0.0;
  return r;
}

struct LpHardInstance {
  int nvars = 0;                        // LP variable count is nvars + 1 (bias)
  std::vector<LinCon> constraints;      // margin rows, expanded by multiplicity
  std::vector<int> support;             // indices into the ground set
  std::vector<std::uint8_t> labels;     // one label per support point
  std::shared_ptr<const FiniteDomain> points;  // the general-position ground set
};

/// Margin-form separability system from a general-position set with a
/// multiplicity-weighted random labelling. Supports are uniform random;
/// multiplicities are the (integer) support_sizes, so densities are integer
/// multiples of 1/N for N = sum of sizes.
inline LpHardInstance lp_hard_instance(int n, const std::vector<int>& support_sizes,
                                       std::uint64_t seed) {
  if (support_sizes.empty()) throw std::invalid_argument("lp_hard_instance: empty support");
  int total = 0;
  for (int t : support_sizes) {
    if (t < 1) throw std::invalid_argument("lp_hard_instance: multiplicities must be >= 1");
    total += t;
  }
  int s = static_cast<int>(support_sizes.size());
  auto ground = std::make_shared<FiniteDomain>(general_position_set(n, total));
  Rng rng(seed);
  auto support = rng.distinct(total, s);
  std::sort(support.begin(), support.end());
  LpHardInstance inst;
  inst.nvars = n;
  inst.points = ground;
  inst.support = support;
  for (int i = 0; i < s; ++i) {
    std::uint8_t label = static_cast<std::uint8_t>(rng.next() & 1);
    inst.labels.push_back(label);
    const auto& p = ground->real_point(support[i]);
    int sigma = label ? 1 : -1;
    LinCon c;
    c.a.assign(n + 1, Rat(0));
    c.a[0] = -sigma;
    for (int j = 0; j < n; ++j) c.a[1 + j] = Rat(-sigma) * p[j];
    c.rel = Rel::Le;
    c.b = -1;
    for (int rep = 0; rep < support_sizes[i]; ++rep) inst.constraints.push_back(c);
  }
  return inst;
}

/// Canonical support-size profiles for the separability reduction over
/// ground size 5(n+1): the feasible side uses n+1 points of multiplicity 5;
/// the far side uses 4(n+1) points with the remaining mass spread as
/// multiplicity-2 points.
inline std::vector<int> lp_yes_sizes(int n) { return std::vector<int>(n + 1, 5); }

inline std::vector<int> lp_no_sizes(int n) {
  int support = 4 * (n + 1);
  int total = 5 * (n + 1);
  std::vector<int> sizes(support, 1);
  for (int i = 0; i < total - support; ++i) sizes[i] = 2;
  return sizes;
}

}  // namespace vcprop
