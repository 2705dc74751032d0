#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "vcprop/dimension.hpp"
#include "vcprop/hardness.hpp"
#include "vcprop/rng.hpp"

using namespace vcprop;

namespace {

FiniteDomain line_n(int n) {
  std::vector<Rat> xs;
  for (int i = 1; i <= n; ++i) xs.emplace_back(i);
  return FiniteDomain::real_line(std::move(xs));
}

std::shared_ptr<Poset> random_poset(Rng& rng, int n, double edge_p = 0.3) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(edge_p)) rel.emplace_back(i, j);  // i<j keeps it acyclic
  return std::make_shared<Poset>(n, rel);
}

}  // namespace

TEST_CASE("is_shattered basics") {
  auto dom = line_n(6);
  Oracle intervals2(FunctionClass::interval_union(2), dom);
  CHECK(is_shattered(intervals2, {}));
  CHECK(is_shattered(intervals2, {0, 2, 3, 5}));
  CHECK(is_shattered(intervals2, {0, 1, 2, 3}));
  CHECK(!is_shattered(intervals2, {0, 1, 2, 3, 4}));

  auto gp = general_position_set(2, 4);
  Oracle hs(FunctionClass::halfspace(2), gp);
  CHECK(!is_shattered(hs, {0, 1, 2, 3}));  // n+2 points
  CHECK(is_shattered(hs, {0, 1, 2}));
}

TEST_CASE("vc equals 2k for interval unions") {
  auto dom = line_n(10);
  for (int k = 1; k <= 3; ++k) {
    Oracle o(FunctionClass::interval_union(k), dom);
    CHECK(vc_dim(o) == 2 * k);
    CHECK(lvc_dim(o) == 2 * k);
  }
}

TEST_CASE("vc equals n+1 for halfspaces in general position") {
  for (int n = 2; n <= 3; ++n) {
    auto dom = general_position_set(n, 6);
    Oracle o(FunctionClass::halfspace(n), dom);
    CHECK(vc_dim(o) == n + 1);
    CHECK(lvc_dim(o) == n + 1);
  }
}

TEST_CASE("halfspaces on colinear points have lvc 2") {
  std::vector<RealVec> pts;
  for (int i = 1; i <= 8; ++i) pts.push_back({Rat(i), Rat(2) * i, Rat(3) * i});
  auto dom = FiniteDomain::real_space(std::move(pts));
  Oracle o(FunctionClass::halfspace(3), dom);
  CHECK(lvc_dim(o) == 2);
  CHECK(vc_dim(o) == 2);
}

TEST_CASE("symmetric threshold dimensions") {
  auto dom = FiniteDomain::abstract_all(10);
  Oracle o(FunctionClass::symmetric_threshold(10, 2), dom);
  CHECK(vc_dim(o) == 2);
  CHECK(lvc_dim(o) == 2);
}

TEST_CASE("monotone over an antichain shatters everything") {
  auto anti = std::make_shared<Poset>(6, std::vector<std::pair<int, int>>{});
  auto dom = FiniteDomain::poset_all(anti);
  Oracle o(FunctionClass::monotone(anti), dom);
  CHECK(vc_dim(o) == 6);
  CHECK(lvc_dim(o) == 6);
}

TEST_CASE("monotone over a comparable pair") {
  auto chain = std::make_shared<Poset>(2, std::vector<std::pair<int, int>>{{0, 1}});
  auto dom = FiniteDomain::poset_all(chain);
  Oracle o(FunctionClass::monotone(chain), dom);
  // The pair {0,1} cannot realise (1,0), so no 2-set nor 1-superset chain.
  CHECK(vc_dim(o) == 1);
  CHECK(lvc_dim(o) == 1);
}

TEST_CASE("alternation-bounded intersections on the embedded curve") {
  // Halfspace intersections restricted to the curve realise exactly the
  // labellings with at most nk alternations (even n), so every set of
  // nk+1 colinear parameters is shattered and none of size nk+2 is.
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {4, 1}}) {
    auto dom = moment_curve_domain(n, 2 * n * k + 1);
    Oracle o(FunctionClass::halfspace_intersection(n, k), dom);
    int bound = n * k;
    CHECK(vc_dim(o) == bound + 1);
    CHECK(lvc_dim(o) == bound + 1);
  }
}

TEST_CASE("lvc certificate pinpoints an unshattered subset") {
  auto dom = line_n(5);
  Oracle o(FunctionClass::interval_union(1), dom);
  ShatterCertificate cert;
  int lvc = lvc_dim(o, {}, &cert);
  CHECK(lvc == 2);
  REQUIRE(cert.subset.size() == 3);
  REQUIRE(cert.labels.size() == 3);
  CHECK(!o.consistent(cert.subset, cert.labels));
}

TEST_CASE("growth and shattering numbers") {
  {
    auto dom = FiniteDomain::abstract_all(5);
    Oracle o(FunctionClass::symmetric_threshold(5, 1), dom);
    auto gs = growth_and_shattering(o);
    CHECK(gs.growth == 6);
    CHECK(gs.shattering_number == 6);
  }
  {
    auto dom = FiniteDomain::abstract({}, 5);
    Oracle o(FunctionClass::symmetric_threshold(5, 1), dom);
    auto gs = growth_and_shattering(o);
    CHECK(gs.growth == 1);
    CHECK(gs.shattering_number == 1);
  }
  {
    auto dom = line_n(4);
    Oracle o(FunctionClass::interval_union(1), dom);
    auto gs = growth_and_shattering(o);
    CHECK(gs.growth == 11);
    CHECK(gs.shattering_number == 11);
    auto rep = classify_extremal(o);
    CHECK(rep.vc == 2);
    CHECK(rep.sauer_bound == 11);
    CHECK(rep.is_maximum);
  }
}

TEST_CASE("growth of alternation classes matches the closed count") {
  // Realisable labellings with at most a alternations on m ordered points:
  // 2 * sum_{i<=min(a,m-1)} C(m-1, i).
  for (int m = 2; m <= 8; ++m) {
    auto dom = line_n(m);
    for (int a = 0; a <= 6; ++a) {
      Oracle o(FunctionClass::alternating(a), dom);
      auto gs = growth_and_shattering(o);
      Int expect = 2 * binomial_le(m - 1, std::min(a, m - 1));
      CHECK(gs.growth == expect);
    }
  }
}

TEST_CASE("classify_extremal: maximum classes") {
  {
    auto dom = FiniteDomain::abstract_all(10);
    Oracle o(FunctionClass::symmetric_default(10), dom);
    auto rep = classify_extremal(o);
    CHECK(rep.vc == 2);
    CHECK(rep.lvc == 2);
    CHECK(rep.is_maximum);
  }
  {
    // Singleton class: threshold zero leaves only the all-zeros function.
    auto dom = FiniteDomain::abstract_all(6);
    Oracle o(FunctionClass::symmetric_threshold(6, 0), dom);
    auto rep = classify_extremal(o);
    CHECK(rep.growth == 1);
    CHECK(rep.vc == 0);
    CHECK(rep.is_maximum);
  }
  {
    // Halfspaces on 5 general-position planar points realise 22 labellings
    // but shatter all 26 small subsets: not shatter-extremal.
    auto dom = general_position_set(2, 5);
    Oracle o(FunctionClass::halfspace(2), dom);
    auto rep = classify_extremal(o);
    CHECK(rep.growth == 22);
    CHECK(rep.shattering_number == 26);
    CHECK(rep.sauer_bound == 26);
    CHECK(!rep.is_maximum);
    CHECK(rep.lvc_equals_vc);
  }
}

TEST_CASE("sauer chain and the maximum iff identity on random classes") {
  Rng rng(2025);
  int checked = 0;
  for (int trial = 0; trial < 160; ++trial) {
    int pick = rng.below_int(6);
    std::optional<Oracle> oracle;
    std::shared_ptr<Poset> poset;  // keep alive
    FiniteDomain dom;
    switch (pick) {
      case 0: {
        dom = line_n(4 + rng.below_int(9));
        oracle.emplace(FunctionClass::interval_union(1 + rng.below_int(3)), dom);
        break;
      }
      case 1: {
        dom = line_n(4 + rng.below_int(9));
        oracle.emplace(FunctionClass::alternating(rng.below_int(5)), dom);
        break;
      }
      case 2: {
        int n = 5 + rng.below_int(8);
        dom = FiniteDomain::abstract_all(n);
        oracle.emplace(FunctionClass::symmetric_threshold(n, rng.below_int(4)), dom);
        break;
      }
      case 3: {
        poset = random_poset(rng, 4 + rng.below_int(7));
        dom = FiniteDomain::poset_all(poset);
        oracle.emplace(FunctionClass::monotone(poset), dom);
        break;
      }
      case 4: {
        dom = general_position_set(2, 4 + rng.below_int(5));
        oracle.emplace(FunctionClass::halfspace(2), dom);
        break;
      }
      case 5: {
        int n = 3 + rng.below_int(2);
        int m = 4 + rng.below_int(4);
        std::set<BitVec> pts;
        while (static_cast<int>(pts.size()) < m) {
          BitVec p(n);
          for (auto& b : p) b = rng.next() & 1;
          pts.insert(p);
        }
        dom = FiniteDomain::cube(std::vector<BitVec>(pts.begin(), pts.end()));
        oracle.emplace(FunctionClass::boolean_decision_tree(n, 1 + rng.below_int(3)), dom);
        break;
      }
    }
    auto rep = classify_extremal(*oracle);
    int n = oracle->domain().size();
    CHECK(rep.lvc <= rep.vc);
    CHECK(rep.vc <= n);
    CHECK(rep.growth <= rep.shattering_number);
    CHECK(rep.shattering_number <= rep.sauer_bound);
    CHECK(rep.is_maximum == (rep.is_shatter_extremal && rep.lvc_equals_vc));
    // Cross-check the lattice-derived dimensions against the direct scans.
    if (n <= 8) {
      CHECK(vc_dim(*oracle) == rep.vc);
      CHECK(lvc_dim(*oracle) == rep.lvc);
    }
    ++checked;
  }
  REQUIRE(checked == 160);
}

TEST_CASE("vc and lvc monotonicity under taking subsets") {
  Rng rng(515);
  auto dom = line_n(9);
  for (int trial = 0; trial < 40; ++trial) {
    FunctionClass cls = trial % 2 ? FunctionClass::interval_union(1 + rng.below_int(3))
                                  : FunctionClass::alternating(rng.below_int(5));
    Oracle big(cls, dom);
    int vcS = vc_dim(big), lvcS = lvc_dim(big);
    int t = 2 + rng.below_int(7);
    auto keep = rng.distinct(9, t);
    std::sort(keep.begin(), keep.end());
    auto sub = dom.subset(keep);
    Oracle small(cls, sub);
    CHECK(vc_dim(small) <= vcS);
    CHECK(lvc_dim(small) >= std::min(lvcS, t));
  }
}

TEST_CASE("symmetric classes have lvc equal to vc on every subdomain") {
  Rng rng(808);
  for (int n : {6, 9, 12}) {
    for (int t = 0; t <= 3; ++t) {
      auto cls = FunctionClass::symmetric_threshold(n, t);
      for (int trial = 0; trial < 6; ++trial) {
        int sz = 1 + rng.below_int(n);
        auto idx = rng.distinct(n, sz);
        std::sort(idx.begin(), idx.end());
        auto dom = FiniteDomain::abstract(idx, n);
        Oracle o(cls, dom);
        CHECK(vc_dim(o) == lvc_dim(o));
      }
    }
  }
}

TEST_CASE("dudley identity for univariate polynomial thresholds") {
  for (int k = 1; k <= 4; ++k) {
    auto dom = line_n(k + 3);
    Oracle o(FunctionClass::ptf(1, k, FunctionClass::PtfDomain::Real), dom);
    CHECK(vc_dim(o) == k + 1);
    CHECK(lvc_dim(o) == k + 1);
  }
}

TEST_CASE("budget errors instead of approximations") {
  auto dom = line_n(23);
  Oracle o(FunctionClass::interval_union(1), dom);
  std::vector<int> big(23);
  std::iota(big.begin(), big.end(), 0);
  CHECK_THROWS_AS(is_shattered(o, big), BudgetError);
  DimensionBudget tiny;
  tiny.max_oracle_calls = 10;
  auto dom2 = line_n(8);
  Oracle o2(FunctionClass::interval_union(2), dom2);
  CHECK_THROWS_AS(vc_dim(o2, tiny), BudgetError);
}
