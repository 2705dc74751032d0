#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "vcprop/meb.hpp"
#include "vcprop/rng.hpp"

using namespace vcprop;

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Brute-force planar oracle: the optimal ball is determined by two or
/// three support points (or is a single point).
double brute_meb_radius_2d(const std::vector<std::vector<double>>& pts) {
  int m = static_cast<int>(pts.size());
  double best = std::numeric_limits<double>::infinity();
  auto covers = [&](std::vector<double> c, double r) {
    for (const auto& p : pts)
      if (dist(p, c) > r + 1e-12) return false;
    return true;
  };
  if (m == 1) return 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::vector<double> c{(pts[i][0] + pts[j][0]) / 2, (pts[i][1] + pts[j][1]) / 2};
      double r = dist(pts[i], pts[j]) / 2;
      if (covers(c, r)) best = std::min(best, r);
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        double ax = pts[i][0], ay = pts[i][1], bx = pts[j][0], by = pts[j][1], cx = pts[k][0],
               cy = pts[k][1];
        double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        if (std::abs(d) < 1e-12) continue;
        double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) +
                     (cx * cx + cy * cy) * (ay - by)) /
                    d;
        double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) +
                     (cx * cx + cy * cy) * (bx - ax)) /
                    d;
        double r = dist({ux, uy}, pts[i]);
        if (covers({ux, uy}, r)) best = std::min(best, r);
      }
  return best;
}

}  // namespace

TEST_CASE("meb fixed cases") {
  CHECK(min_enclosing_ball({{3.0, 4.0}}).radius == 0.0);
  auto two = min_enclosing_ball({{0, 0}, {3, 0}});
  CHECK_THAT(two.radius, Catch::Matchers::WithinAbs(1.5, 1e-12));
  CHECK_THAT(two.center[0], Catch::Matchers::WithinAbs(1.5, 1e-9));
  auto eq = min_enclosing_ball({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  CHECK_THAT(eq.radius, Catch::Matchers::WithinAbs(1.0 / std::sqrt(3.0), 1e-9));
  auto obtuse = min_enclosing_ball({{0, 0}, {10, 0}, {5, 0.1}});
  CHECK_THAT(obtuse.radius, Catch::Matchers::WithinAbs(5.0, 1e-9));
}

TEST_CASE("meb matches the planar support-set oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + rng.below_int(9);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < m; ++i) pts.push_back({rng.uniform01() * 10 - 5, rng.uniform01() * 10 - 5});
    double want = brute_meb_radius_2d(pts);
    double got = min_enclosing_ball(pts).radius;
    CHECK_THAT(got, Catch::Matchers::WithinAbs(want, 1e-8));
  }
}

TEST_CASE("meb covers all points") {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 2 + rng.below_int(20);
    int m = 2 + rng.below_int(30);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < m; ++i) {
      std::vector<double> p(d);
      for (auto& v : p) v = rng.normal();
      pts.push_back(p);
    }
    auto ball = min_enclosing_ball(pts);
    for (const auto& p : pts) CHECK(dist(p, ball.center) <= ball.radius + 1e-8);
  }
}

TEST_CASE("meb radius is invariant under rotations and translations") {
  Rng rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    int d = 3 + rng.below_int(6);
    int m = 3 + rng.below_int(12);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < m; ++i) {
      std::vector<double> p(d);
      for (auto& v : p) v = rng.normal() * 2.0;
      pts.push_back(p);
    }
    double base = min_enclosing_ball(pts).radius;
    // Random rotation from composed Givens rotations, plus a shift.
    std::vector<double> shift(d);
    for (auto& v : shift) v = rng.normal() * 5.0;
    auto rotated = pts;
    for (int rep = 0; rep < 3 * d; ++rep) {
      int a = rng.below_int(d), b = rng.below_int(d);
      if (a == b) continue;
      double theta = rng.uniform01() * 6.283185307179586;
      double ca = std::cos(theta), sa = std::sin(theta);
      for (auto& p : rotated) {
        double pa = p[a], pb = p[b];
        p[a] = ca * pa - sa * pb;
        p[b] = sa * pa + ca * pb;
      }
    }
    for (auto& p : rotated)
      for (int j = 0; j < d; ++j) p[j] += shift[j];
    double moved = min_enclosing_ball(rotated).radius;
    CHECK_THAT(moved, Catch::Matchers::WithinAbs(base, 1e-8));
  }
}

TEST_CASE("capped sphere points fit in a unit ball") {
  // Points on the radius-(1+eta) sphere with first coordinate at least
  // sqrt(eta(2-eta)) lie in the unit ball centred at that offset.
  const double eta = 0.05;
  const int n = 30;
  const double cap = std::sqrt(eta * (2 - eta));
  Rng rng(10);
  std::vector<std::vector<double>> pts;
  while (static_cast<int>(pts.size()) < n) {
    auto x = sphere_point(rng, n, 1.0 + eta);
    if (x[0] >= cap * (1.0 + eta)) pts.push_back(x);
  }
  auto ball = min_enclosing_ball(pts);
  CHECK(ball.radius <= 1.0 + 1e-9);
}
