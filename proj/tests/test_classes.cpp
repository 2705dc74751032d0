#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "vcprop/classes.hpp"
#include "vcprop/hardness.hpp"
#include "vcprop/rng.hpp"

using namespace vcprop;

namespace {

FiniteDomain line(std::vector<int> xs) {
  std::vector<Rat> r(xs.begin(), xs.end());
  return FiniteDomain::real_line(std::move(r));
}

std::vector<std::uint8_t> bits(std::initializer_list<int> v) {
  return std::vector<std::uint8_t>(v.begin(), v.end());
}

/// All labellings of the domain realisable by a single halfspace, via the
/// exact margin oracle on the raw coordinates.
std::set<std::uint32_t> halfspace_patterns(const FiniteDomain& dom) {
  std::vector<std::vector<Rat>> pts;
  for (int i = 0; i < dom.size(); ++i) pts.push_back(dom.real_point(i));
  std::set<std::uint32_t> out;
  int m = dom.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::uint8_t> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = (mask >> i) & 1;
    if (linear_separability(pts, labels)) out.insert(mask);
  }
  return out;
}

}  // namespace

TEST_CASE("moment curve embedding") {
  CHECK(moment_curve_embed(Rat(3), 2) == RealVec{3, 9});
  CHECK(moment_curve_embed(Rat(2), 3) == RealVec{0, 2, 4});
  CHECK(moment_curve_embed(Rat(0), 2) == RealVec{0, 0});
  CHECK(moment_curve_embed(Rat(2), 4) == RealVec{2, 4, 8, 16});
  CHECK(moment_curve_embed(Rat(-1), 5) == RealVec{0, -1, 1, -1, 1});
}

TEST_CASE("monomial embedding in degree-lex order") {
  CHECK(monomial_embed({-1, 1}, 2) == std::vector<int>{1, -1, 1, -1});
  CHECK(monomial_embed({1, 1, -1}, 0) == std::vector<int>{1});
  CHECK(monomial_embed({1, 1, -1}, 1) == std::vector<int>{1, 1, 1, -1});
  CHECK_THROWS(monomial_embed({0, 1}, 1));
  CHECK(monomial_index_sets(20, 2).size() == 211);
}

TEST_CASE("alternation count") {
  CHECK(alternation_count(bits({0, 1, 0, 1})) == 3);
  CHECK(alternation_count(bits({1, 1, 1})) == 0);
  CHECK(alternation_count(bits({1, 1, 0, 0, 1})) == 2);
  CHECK(alternation_count({}) == 0);
}

TEST_CASE("interval union oracle") {
  auto dom = line({1, 2, 3});
  CHECK(!consistent(FunctionClass::interval_union(1), dom, bits({1, 0, 1})));
  CHECK(consistent(FunctionClass::interval_union(2), dom, bits({1, 0, 1})));
  CHECK(consistent(FunctionClass::interval_union(1), dom, bits({0, 1, 1})));
  Oracle o(FunctionClass::interval_union(1), dom);
  CHECK(o.consistent({}, {}));
  // Order independence: the oracle sorts by coordinate.
  auto shuffled = line({3, 1, 2});
  CHECK(!consistent(FunctionClass::interval_union(1), shuffled, bits({1, 1, 0})));
}

TEST_CASE("interval union agrees with exhaustive interval placement") {
  // Independent oracle: k intervals with endpoints between points; blocks of
  // ones must number at most k.
  Rng rng(11);
  auto dom = line({1, 2, 3, 4, 5, 6, 7, 8});
  for (int k = 1; k <= 3; ++k) {
    FunctionClass cls = FunctionClass::interval_union(k);
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
      std::vector<std::uint8_t> labels(8);
      int blocks = 0;
      for (int i = 0; i < 8; ++i) {
        labels[i] = (mask >> i) & 1;
        if (labels[i] && (i == 0 || !((mask >> (i - 1)) & 1))) ++blocks;
      }
      CHECK(consistent(cls, dom, labels) == (blocks <= k));
    }
  }
}

TEST_CASE("halfspace oracle on the plane") {
  auto dom = FiniteDomain::real_space({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
  auto cls = FunctionClass::halfspace(2);
  CHECK(!consistent(cls, dom, bits({1, 0, 0, 1})));
  CHECK(consistent(cls, dom, bits({1, 1, 0, 0})));
  CHECK(consistent(cls, dom, bits({0, 0, 0, 0})));
  CHECK(consistent(cls, dom, bits({1, 1, 1, 1})));
  CHECK_THROWS_AS(consistent(FunctionClass::halfspace(3), dom, bits({0, 0, 0, 0})), DomainError);
}

TEST_CASE("symmetric threshold oracle") {
  auto dom = FiniteDomain::abstract({1, 2, 3}, 10);
  auto cls = FunctionClass::symmetric_threshold(10, 2);
  CHECK(!consistent(cls, dom, bits({1, 1, 1})));
  CHECK(consistent(cls, dom, bits({1, 1, 0})));
  CHECK(FunctionClass::symmetric_default(10).k == 2);
  CHECK(FunctionClass::symmetric_default(14).k == 2);
  CHECK(FunctionClass::symmetric_default(15).k == 3);
}

TEST_CASE("monotone oracle") {
  auto chain = std::make_shared<Poset>(2, std::vector<std::pair<int, int>>{{0, 1}});
  auto dom = FiniteDomain::poset_all(chain);
  auto cls = FunctionClass::monotone(chain);
  CHECK(!consistent(cls, dom, bits({1, 0})));
  CHECK(consistent(cls, dom, bits({0, 1})));
  CHECK(consistent(cls, dom, bits({1, 1})));

  auto anti = std::make_shared<Poset>(3, std::vector<std::pair<int, int>>{});
  auto dom2 = FiniteDomain::poset_all(anti);
  auto cls2 = FunctionClass::monotone(anti);
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<std::uint8_t> labels(3);
    for (int i = 0; i < 3; ++i) labels[i] = (mask >> i) & 1;
    CHECK(consistent(cls2, dom2, labels));
  }
}

TEST_CASE("junta oracle") {
  auto dom = FiniteDomain::cube({{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 0, 1, 1}});
  CHECK(!consistent(FunctionClass::junta(4, 1), dom, bits({0, 1, 1, 0})));
  CHECK(consistent(FunctionClass::junta(4, 2), dom, bits({0, 1, 1, 0})));
  CHECK(consistent(FunctionClass::junta(4, 1), dom, bits({0, 1, 0, 1})));
  CHECK(consistent(FunctionClass::junta(4, 4), dom, bits({1, 0, 0, 1})));
  // Single point is always fine.
  auto one = FiniteDomain::cube({{1, 0, 1, 0}});
  CHECK(consistent(FunctionClass::junta(4, 1), one, bits({1})));
}

TEST_CASE("ptf oracle equals halfspace oracle at degree one") {
  Rng rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3;
    std::set<BitVec> pts;
    while (static_cast<int>(pts.size()) < 5) {
      BitVec p(n);
      for (auto& b : p) b = rng.next() & 1;
      pts.insert(p);
    }
    std::vector<BitVec> pv(pts.begin(), pts.end());
    auto cube_dom = FiniteDomain::cube(pv);
    std::vector<std::vector<Rat>> real_pts;
    for (const auto& p : pv) {
      std::vector<Rat> v;
      for (auto b : p) v.push_back(b ? 1 : -1);
      real_pts.push_back(v);
    }
    auto real_dom = FiniteDomain::real_space(real_pts);
    for (std::uint32_t mask = 0; mask < 32; ++mask) {
      std::vector<std::uint8_t> labels(5);
      for (int i = 0; i < 5; ++i) labels[i] = (mask >> i) & 1;
      bool ptf = consistent(FunctionClass::ptf(n, 1, FunctionClass::PtfDomain::Cube), cube_dom, labels);
      bool hs = consistent(FunctionClass::halfspace(n), real_dom, labels);
      REQUIRE(ptf == hs);
    }
  }
}

TEST_CASE("degree-2 ptf realises parity on two variables") {
  auto dom = FiniteDomain::cube({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  auto cls = FunctionClass::ptf(2, 2, FunctionClass::PtfDomain::Cube);
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    std::vector<std::uint8_t> labels(4);
    for (int i = 0; i < 4; ++i) labels[i] = (mask >> i) & 1;
    CHECK(consistent(cls, dom, labels));
  }
}

TEST_CASE("real decision tree oracle needs an axis line") {
  auto dom = FiniteDomain::real_space({{Rat(0), Rat(1)}, {Rat(0), Rat(2)}, {Rat(0), Rat(3)}});
  auto cls = FunctionClass::real_decision_tree(2, 1);
  CHECK(!consistent(cls, dom, bits({1, 0, 1})));
  CHECK(consistent(cls, dom, bits({1, 0, 0})));
  auto plane = FiniteDomain::real_space({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}});
  CHECK_THROWS_AS(consistent(cls, plane, bits({1, 0, 0})), DomainError);
}

TEST_CASE("halfspace intersection oracle matches AND-composition of halfspaces") {
  // Independent route: realisable labellings of k intersected halfspaces are
  // exactly the coordinatewise ANDs of k single-halfspace labellings, with
  // the halfspace side decided by the exact margin oracle on the embedded
  // points.
  for (int n : {2, 4}) {
    for (int k : {1, 2}) {
      int m = std::min(9, n * k + 3);
      auto dom = moment_curve_domain(n, m);
      auto single = halfspace_patterns(dom);
      std::set<std::uint32_t> composed;
      if (k == 1) {
        composed = single;
      } else {
        for (auto a : single)
          for (auto b : single) composed.insert(a & b);
      }
      auto cls = FunctionClass::halfspace_intersection(n, k);
      Oracle oracle(cls, dom);
      std::vector<int> all(m);
      std::iota(all.begin(), all.end(), 0);
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::uint8_t> labels(m);
        for (int i = 0; i < m; ++i) labels[i] = (mask >> i) & 1;
        INFO("n=" << n << " k=" << k << " mask=" << mask);
        REQUIRE(oracle.consistent(all, labels) == composed.count(mask) > 0);
      }
    }
  }
}

TEST_CASE("halfspace intersection rejects off-curve points") {
  auto dom = FiniteDomain::real_space({{Rat(1), Rat(1)}, {Rat(2), Rat(5)}});
  CHECK_THROWS_AS(consistent(FunctionClass::halfspace_intersection(2, 1), dom, bits({0, 1})),
                  DomainError);
}

TEST_CASE("odd-dimension intersection bound uses n-1") {
  auto dom = moment_curve_domain(3, 6);
  auto cls = FunctionClass::halfspace_intersection(3, 1);
  // psi_3 embeds through degree-2 polynomials: at most 2 alternations.
  CHECK(consistent(cls, dom, bits({1, 0, 0, 0, 0, 1})));
  CHECK(!consistent(cls, dom, bits({1, 0, 1, 0, 0, 0})));
}

TEST_CASE("hyperplane arrangement oracle") {
  // Lines x=1 and y=1 in the plane; sign is nonnegative-side.
  auto cls = FunctionClass::hyperplane_arrangement({{Rat(-1), Rat(1), Rat(0)}, {Rat(-1), Rat(0), Rat(1)}});
  auto dom = FiniteDomain::abstract_all(2);
  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    std::vector<std::uint8_t> labels{static_cast<std::uint8_t>(mask & 1),
                                     static_cast<std::uint8_t>((mask >> 1) & 1)};
    CHECK(consistent(cls, dom, labels));
  }
  // Parallel lines x=1, x=2 cannot be (>=1-side, <2-side) ... all four but
  // the impossible one (left of 1, right of 2).
  auto par = FunctionClass::hyperplane_arrangement({{Rat(-1), Rat(1)}, {Rat(-2), Rat(1)}});
  auto dom2 = FiniteDomain::abstract_all(2);
  CHECK(consistent(par, dom2, bits({1, 1})));
  CHECK(consistent(par, dom2, bits({0, 0})));
  CHECK(consistent(par, dom2, bits({1, 0})));
  CHECK(!consistent(par, dom2, bits({0, 1})));
}

TEST_CASE("empty point list is consistent for every class") {
  auto l = line({1, 2});
  Oracle a(FunctionClass::interval_union(1), l);
  CHECK(a.consistent({}, {}));
  auto cube = FiniteDomain::cube({{0, 0}, {1, 1}});
  Oracle b(FunctionClass::junta(2, 1), cube);
  CHECK(b.consistent({}, {}));
}
