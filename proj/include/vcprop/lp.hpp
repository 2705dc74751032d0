#pragma once

#include <optional>
#include <vector>

#include "vcprop/core.hpp"
#include "vcprop/rational.hpp"

namespace vcprop {

enum class Rel { Le, Lt };

/// One affine constraint  a.x (<= | <) b  over free real variables.
struct LinCon {
  std::vector<Rat> a;
  Rel rel = Rel::Le;
  Rat b = 0;
};

struct LpResult {
  bool feasible = false;
  std::vector<Rat> witness;  // a satisfying point when feasible
};

namespace detail {

/// Dense rational tableau simplex with Bland's rule. Minimises cost over
/// { z >= 0 : T z = rhs } starting from the canonical basis handed in.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rat>> t, std::vector<Rat> rhs, std::vector<int> basis)
      : t_(std::move(t)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(t_.size()); }
  int cols() const { return rows() ? static_cast<int>(t_[0].size()) : 0; }
  const std::vector<int>& basis() const { return basis_; }
  const Rat& rhs(int r) const { return rhs_[r]; }

  void block_column(int c) { blocked_.resize(cols(), false), blocked_[c] = true; }

  Rat value_of(int var) const {
    for (int r = 0; r < rows(); ++r)
      if (basis_[r] == var) return rhs_[r];
    return 0;
  }

  void pivot(int r, int c) {
    Rat p = t_[r][c];
    for (auto& v : t_[r]) v /= p;
    rhs_[r] /= p;
    for (int i = 0; i < rows(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rat f = t_[i][c];
      for (int j = 0; j < cols(); ++j) t_[i][j] -= f * t_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  /// Bland minimisation of cost.z; `stop` may end the run early (used to
  /// bail out as soon as a strictness witness exists). Returns false only
  /// when the problem is unbounded below.
  template <typename Stop>
  bool minimize(const std::vector<Rat>& cost, Stop stop) {
    blocked_.resize(cols(), false);
    for (;;) {
      if (stop()) return true;
      std::vector<Rat> red = cost;
      for (int r = 0; r < rows(); ++r) {
        const Rat& cb = cost[basis_[r]];
        if (cb == 0) continue;
        for (int j = 0; j < cols(); ++j)
          if (t_[r][j] != 0) red[j] -= cb * t_[r][j];
      }
      int entering = -1;
      for (int j = 0; j < cols(); ++j) {
        if (blocked_[j] || is_basic(j)) continue;
        if (red[j] < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;  // optimal
      int leave = -1;
      Rat best_ratio = 0;
      for (int r = 0; r < rows(); ++r) {
        if (t_[r][entering] <= 0) continue;
        Rat ratio = rhs_[r] / t_[r][entering];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, entering);
    }
  }

  bool is_basic(int var) const {
    for (int b : basis_)
      if (b == var) return true;
    return false;
  }

  /// Pivots the given variable out of the basis at value zero, or drops its
  /// (all-zero) row. Used to retire the phase-1 artificial variable.
  void evict(int var) {
    for (int r = 0; r < rows(); ++r) {
      if (basis_[r] != var) continue;
      for (int j = 0; j < cols(); ++j) {
        if (j == var || blocked_[j] || is_basic(j) || t_[r][j] == 0) continue;
        pivot(r, j);
        return;
      }
      t_.erase(t_.begin() + r);
      rhs_.erase(rhs_.begin() + r);
      basis_.erase(basis_.begin() + r);
      return;
    }
  }

 private:
  std::vector<std::vector<Rat>> t_;
  std::vector<Rat> rhs_;
  std::vector<int> basis_;
  std::vector<char> blocked_;
};

}  // namespace detail

/// Exact feasibility of a mixed weak/strict affine system over R^nvars.
/// Strict rows are handled through an auxiliary slack variable whose
/// supremum is positive iff the open system has a point.
inline LpResult lp_feasible(int nvars, const std::vector<LinCon>& cons) {
  for (const auto& c : cons)
    if (static_cast<int>(c.a.size()) != nvars)
      throw std::invalid_argument("lp_feasible: constraint arity mismatch");
  if (cons.empty()) return {true, std::vector<Rat>(nvars, Rat(0))};

  bool any_strict = false;
  for (const auto& c : cons)
    if (c.rel == Rel::Lt) any_strict = true;

  // Columns: u_0..u_{n-1}, v_0..v_{n-1} (x = u - v), [e], slacks, x0.
  int n_u = nvars, n_v = nvars;
  int e_col = any_strict ? n_u + n_v : -1;
  int first_slack = n_u + n_v + (any_strict ? 1 : 0);
  int m = static_cast<int>(cons.size()) + (any_strict ? 1 : 0);
  int x0_col = first_slack + m;
  int ncols = x0_col + 1;

  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(ncols, Rat(0)));
  std::vector<Rat> rhs(m, Rat(0));
  std::vector<int> basis(m);
  for (int i = 0; i < static_cast<int>(cons.size()); ++i) {
    for (int j = 0; j < nvars; ++j) {
      T[i][j] = cons[i].a[j];
      T[i][n_u + j] = -cons[i].a[j];
    }
    if (cons[i].rel == Rel::Lt) T[i][e_col] = 1;
    T[i][first_slack + i] = 1;
    T[i][x0_col] = -1;
    rhs[i] = cons[i].b;
    basis[i] = first_slack + i;
  }
  if (any_strict) {
    // Cap e <= 1 so the phase-2 maximisation is always bounded.
    int r = m - 1;
    T[r][e_col] = 1;
    T[r][first_slack + r] = 1;
    T[r][x0_col] = -1;
    rhs[r] = 1;
    basis[r] = first_slack + r;
  }

  detail::Tableau tab(std::move(T), std::move(rhs), std::move(basis));

  // Phase 1: minimise the artificial x0.
  bool need_phase1 = false;
  int worst = -1;
  Rat worst_val = 0;
  for (int r = 0; r < m; ++r)
    if (tab.rhs(r) < worst_val) {
      worst_val = tab.rhs(r);
      worst = r;
      need_phase1 = true;
    }
  if (need_phase1) {
    tab.pivot(worst, x0_col);
    std::vector<Rat> cost(ncols, Rat(0));
    cost[x0_col] = 1;
    tab.minimize(cost, [] { return false; });
    if (tab.value_of(x0_col) > 0) return {false, {}};
    tab.evict(x0_col);
  }
  tab.block_column(x0_col);

  auto extract = [&](std::vector<Rat>* out) {
    out->assign(nvars, Rat(0));
    for (int j = 0; j < nvars; ++j) (*out)[j] = tab.value_of(j) - tab.value_of(n_u + j);
  };

  if (!any_strict) {
    LpResult res{true, {}};
    extract(&res.witness);
    return res;
  }

  // Phase 2: maximise e; any basic solution with e > 0 settles the matter.
  std::vector<Rat> cost(ncols, Rat(0));
  cost[e_col] = -1;
  tab.minimize(cost, [&] { return tab.value_of(e_col) > 0; });
  if (tab.value_of(e_col) > 0) {
    LpResult res{true, {}};
    extract(&res.witness);
    return res;
  }
  return {false, {}};
}

/// Margin form of halfspace consistency: labels sigma in {-1,+1} and
/// sigma_i (w_0 + w . x_i) >= 1 feasible  <=>  strictly separable.
inline bool linear_separability(const std::vector<std::vector<Rat>>& points,
                                const std::vector<std::uint8_t>& labels) {
  if (points.size() != labels.size())
    throw std::invalid_argument("linear_separability: size mismatch");
  if (points.empty()) return true;
  int d = static_cast<int>(points[0].size());
  std::vector<LinCon> cons;
  cons.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != d)
      throw std::invalid_argument("linear_separability: mixed dimensions");
    int sigma = labels[i] ? 1 : -1;
    LinCon c;
    c.a.assign(d + 1, Rat(0));
    c.a[0] = -sigma;
    for (int j = 0; j < d; ++j) c.a[1 + j] = Rat(-sigma) * points[i][j];
    c.rel = Rel::Le;
    c.b = -1;
    cons.push_back(std::move(c));
  }
  return lp_feasible(d + 1, cons).feasible;
}

}  // namespace vcprop
