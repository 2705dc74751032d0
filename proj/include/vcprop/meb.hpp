#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vcprop {

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

namespace meb_detail {

/// Circumcentre of the support q_0..q_s inside its affine hull together
/// with the affine weights lambda. Returns false when the Gram system is
/// numerically singular.
inline bool face_solve(const std::vector<std::vector<double>>& pts, const std::vector<int>& support,
                       std::vector<double>& center, std::vector<double>& lambda) {
  int s = static_cast<int>(support.size());
  int d = static_cast<int>(pts[0].size());
  const auto& q0 = pts[support[0]];
  if (s == 1) {
    center = q0;
    lambda.assign(1, 1.0);
    return true;
  }
  int k = s - 1;
  std::vector<std::vector<double>> g(k, std::vector<double>(k + 1, 0.0));
  double diag_scale = 0.0;
  for (int a = 0; a < k; ++a) {
    const auto& qa = pts[support[a + 1]];
    for (int b = 0; b < k; ++b) {
      const auto& qb = pts[support[b + 1]];
      double dot = 0.0;
      for (int j = 0; j < d; ++j) dot += (qa[j] - q0[j]) * (qb[j] - q0[j]);
      g[a][b] = dot;
    }
    g[a][k] = 0.5 * g[a][a];
    diag_scale = std::max(diag_scale, std::abs(g[a][a]));
  }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    if (std::abs(g[piv][col]) < 1e-11 * diag_scale) return false;
    std::swap(g[piv], g[col]);
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      double f = g[r][col] / g[col][col];
      if (f == 0.0) continue;
      for (int c2 = col; c2 <= k; ++c2) g[r][c2] -= f * g[col][c2];
    }
  }
  std::vector<double> mu(k);
  for (int a = 0; a < k; ++a) mu[a] = g[a][k] / g[a][a];
  center = q0;
  double mu_sum = 0.0;
  for (int a = 0; a < k; ++a) {
    mu_sum += mu[a];
    const auto& qa = pts[support[a + 1]];
    for (int j = 0; j < d; ++j) center[j] += mu[a] * (qa[j] - q0[j]);
  }
  lambda.assign(s, 0.0);
  lambda[0] = 1.0 - mu_sum;
  for (int a = 0; a < k; ++a) lambda[a + 1] = mu[a];
  return true;
}

}  // namespace meb_detail

/// Minimum enclosing ball by the support-walking iteration: keep a set of
/// boundary points, walk the centre toward their circumcentre until some
/// outside point reaches the shrinking boundary (then it joins the
/// support), and at the circumcentre drop support points with negative
/// barycentric weight. Terminates at the KKT point of the convex problem;
/// accuracy is limited only by the linear solves.
inline Ball min_enclosing_ball(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::invalid_argument("min_enclosing_ball: no points");
  const int m = static_cast<int>(points.size());
  const int d = static_cast<int>(points[0].size());
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument("min_enclosing_ball: mixed dimensions");

  auto dist2_to = [&](const std::vector<double>& c, int i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      double t = points[i][j] - c[j];
      s += t * t;
    }
    return s;
  };

  double scale2 = 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) scale2 = std::max(scale2, points[i][j] * points[i][j]);

  std::vector<double> c = points[0];
  int far0 = 0;
  double far_d2 = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = dist2_to(c, i);
    if (s > far_d2) {
      far_d2 = s;
      far0 = i;
    }
  }
  if (far_d2 == 0.0) return {c, 0.0};
  std::vector<int> support{far0};
  std::vector<double> cc, lambda;

  auto covering_r2 = [&] {
    double r2 = 0.0;
    for (int i = 0; i < m; ++i) r2 = std::max(r2, dist2_to(c, i));
    return r2;
  };
  double best_r2 = covering_r2();
  int stalled = 0;
  const int max_stall = 4 * (d + 2);

  const int max_rounds = 2000 * (d + 2);
  for (int round = 0; round < max_rounds; ++round) {
    double cur_r2 = covering_r2();
    if (cur_r2 < best_r2 - 1e-13 * scale2) {
      best_r2 = cur_r2;
      stalled = 0;
    } else if (++stalled > max_stall) {
      break;  // numerical fixed point; the current ball already covers
    }
    if (!meb_detail::face_solve(points, support, cc, lambda)) {
      support.pop_back();
      if (support.empty()) support.push_back(far0);
      continue;
    }
    double step2 = 0.0;
    for (int j = 0; j < d; ++j) step2 += (cc[j] - c[j]) * (cc[j] - c[j]);
    if (step2 <= 1e-22 * scale2) {
      int neg = -1;
      double most_neg = -1e-11;
      for (size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] < most_neg) {
          most_neg = lambda[i];
          neg = static_cast<int>(i);
        }
      if (neg < 0) break;  // KKT: centre in the support hull, all inside
      support.erase(support.begin() + neg);
      continue;
    }
    // Walk c -> cc; the first non-support point reaching the boundary stops
    // the walk and joins the support.
    int q = support[0];
    double cq2 = dist2_to(c, q);
    double t_stop = 1.0;
    int stopper = -1;
    for (int i = 0; i < m; ++i) {
      bool in_support = false;
      for (int sidx : support)
        if (sidx == i) in_support = true;
      if (in_support) continue;
      double denom = 0.0;
      for (int j = 0; j < d; ++j) denom += (cc[j] - c[j]) * (points[i][j] - points[q][j]);
      denom *= 2.0;
      if (denom >= -1e-18 * scale2) continue;  // never catches the boundary
      double num = dist2_to(c, i) - cq2;       // <= 0 while i is inside
      double t = num / denom;
      if (t < t_stop) {
        t_stop = t;
        stopper = i;
      }
    }
    if (t_stop > 0.0)
      for (int j = 0; j < d; ++j) c[j] += t_stop * (cc[j] - c[j]);
    if (stopper >= 0) support.push_back(stopper);
    // Full walks fall through; the next round re-solves and checks weights.
  }

  double r2 = 0.0;
  for (int i = 0; i < m; ++i) r2 = std::max(r2, dist2_to(c, i));
  return {c, std::sqrt(r2)};
}

}  // namespace vcprop
