#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "vcprop/core.hpp"
#include "vcprop/decision_tree.hpp"
#include "vcprop/lp.hpp"
#include "vcprop/rational.hpp"

namespace vcprop {

/// The paper-facing embedding R -> R^n used for halfspace-intersection
/// domains: (x, x^2, ..., x^n) for even n, (0, x, ..., x^{n-1}) for odd n.
inline RealVec moment_curve_embed(const Rat& x, int n) {
  RealVec out(n);
  if (n % 2 == 0) {
    Rat p = 1;
    for (int i = 0; i < n; ++i) {
      p *= x;
      out[i] = p;
    }
  } else {
    out[0] = 0;
    Rat p = 1;
    for (int i = 1; i < n; ++i) {
      p *= x;
      out[i] = p;
    }
  }
  return out;
}

/// Multilinear feature map on {-1,+1}^n: one coordinate per monomial
/// x^a with |a| <= k, in degree-lexicographic order of the index sets
/// (degree first, then lexicographic by positions).
inline std::vector<std::vector<int>> monomial_index_sets(int n, int k) {
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  // Enumerate by degree so the order is deg-lex.
  for (int d = 0; d <= std::min(n, k); ++d) {
    auto add_deg = [&](auto&& self, int start, int remaining) -> void {
      if (remaining == 0) {
        sets.push_back(cur);
        return;
      }
      for (int i = start; i + remaining <= n; ++i) {
        cur.push_back(i);
        self(self, i + 1, remaining - 1);
        cur.pop_back();
      }
    };
    add_deg(add_deg, 0, d);
  }
  return sets;
}

/// x must have entries in {-1,+1}.
inline std::vector<int> monomial_embed(const std::vector<int>& x, int k) {
  for (int v : x)
    if (v != 1 && v != -1) throw std::invalid_argument("monomial_embed: entries must be +-1");
  int n = static_cast<int>(x.size());
  auto sets = monomial_index_sets(n, k);
  std::vector<int> out;
  out.reserve(sets.size());
  for (const auto& s : sets) {
    int prod = 1;
    for (int i : s) prod *= x[i];
    out.push_back(prod);
  }
  return out;
}

inline std::vector<int> cube_to_pm1(const BitVec& b) {
  std::vector<int> x(b.size());
  for (size_t i = 0; i < b.size(); ++i) x[i] = b[i] ? 1 : -1;
  return x;
}

/// Number of adjacent unequal pairs in a 0/1 sequence ordered along a line.
inline int alternation_count(const std::vector<std::uint8_t>& labels_along_line) {
  int c = 0;
  for (size_t i = 1; i < labels_along_line.size(); ++i)
    if (labels_along_line[i] != labels_along_line[i - 1]) ++c;
  return c;
}

/// All exponent vectors of total degree <= k over n real variables,
/// degree-lexicographic. Used by real-domain polynomial threshold oracles.
inline std::vector<std::vector<int>> exponent_vectors(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  for (int d = 0; d <= k; ++d) {
    // exact total degree d, lexicographic within the degree
    auto add = [&](auto&& self, int pos, int remaining) -> void {
      if (pos == n) {
        if (remaining == 0) out.push_back(cur);
        return;
      }
      for (int e = remaining; e >= 0; --e) {
        cur[pos] = e;
        self(self, pos + 1, remaining - e);
      }
      cur[pos] = 0;
    };
    add(add, 0, d);
  }
  return out;
}

struct FunctionClass {
  enum class Kind {
    IntervalUnion,
    Alternating,
    Halfspace,
    HalfspaceIntersection,
    Ptf,
    RealDecisionTree,
    BooleanDecisionTree,
    Junta,
    Monotone,
    SymmetricThreshold,
    HyperplaneArrangement,
  };
  enum class PtfDomain { Real, Cube };

  Kind kind = Kind::IntervalUnion;
  int n = 0;  // ambient parameter (dimension / variable count / ground size)
  int k = 0;  // size parameter (intervals, alternations, degree, nodes, junta arity, ones threshold)
  PtfDomain ptf_domain = PtfDomain::Cube;
  std::shared_ptr<const Poset> poset;
  std::vector<std::vector<Rat>> functionals;  // rows (t, w_1..w_d)

  static FunctionClass interval_union(int k) { return make(Kind::IntervalUnion, 0, k); }
  static FunctionClass alternating(int m) { return make(Kind::Alternating, 0, m); }
  static FunctionClass halfspace(int n) { return make(Kind::Halfspace, n, 1); }
  static FunctionClass halfspace_intersection(int n, int k) {
    return make(Kind::HalfspaceIntersection, n, k);
  }
  static FunctionClass ptf(int n, int k, PtfDomain dom) {
    auto c = make(Kind::Ptf, n, k);
    c.ptf_domain = dom;
    return c;
  }
  static FunctionClass real_decision_tree(int n, int k) { return make(Kind::RealDecisionTree, n, k); }
  static FunctionClass boolean_decision_tree(int n, int k) {
    return make(Kind::BooleanDecisionTree, n, k);
  }
  static FunctionClass junta(int n, int k) { return make(Kind::Junta, n, k); }
  static FunctionClass monotone(std::shared_ptr<const Poset> p) {
    FunctionClass c;
    c.kind = Kind::Monotone;
    c.n = p->size();
    c.poset = std::move(p);
    return c;
  }
  static FunctionClass symmetric_threshold(int n, int t) { return make(Kind::SymmetricThreshold, n, t); }
  /// The paper-scale symmetric class: at most floor(n/5) ones.
  static FunctionClass symmetric_default(int n) { return symmetric_threshold(n, n / 5); }
  static FunctionClass hyperplane_arrangement(std::vector<std::vector<Rat>> rows) {
    FunctionClass c;
    c.kind = Kind::HyperplaneArrangement;
    c.n = static_cast<int>(rows.size());
    c.functionals = std::move(rows);
    return c;
  }

  std::string name() const {
    switch (kind) {
      case Kind::IntervalUnion: return "intervals:k=" + std::to_string(k);
      case Kind::Alternating: return "alternating:m=" + std::to_string(k);
      case Kind::Halfspace: return "halfspace:n=" + std::to_string(n);
      case Kind::HalfspaceIntersection:
        return "hs-intersect:n=" + std::to_string(n) + ",k=" + std::to_string(k);
      case Kind::Ptf:
        return "ptf:n=" + std::to_string(n) + ",k=" + std::to_string(k) +
               (ptf_domain == PtfDomain::Cube ? ",domain=cube" : ",domain=real");
      case Kind::RealDecisionTree:
        return "realtree:n=" + std::to_string(n) + ",k=" + std::to_string(k);
      case Kind::BooleanDecisionTree:
        return "booltree:n=" + std::to_string(n) + ",k=" + std::to_string(k);
      case Kind::Junta: return "junta:n=" + std::to_string(n) + ",k=" + std::to_string(k);
      case Kind::Monotone: return "monotone:n=" + std::to_string(n);
      case Kind::SymmetricThreshold:
        return "symmetric:n=" + std::to_string(n) + ",t=" + std::to_string(k);
      case Kind::HyperplaneArrangement: return "arrangement:n=" + std::to_string(n);
    }
    return "?";
  }

 private:
  static FunctionClass make(Kind kk, int nn, int par) {
    if (par < 0 || nn < 0) throw std::invalid_argument("FunctionClass: negative parameter");
    FunctionClass c;
    c.kind = kk;
    c.n = nn;
    c.k = par;
    return c;
  }
};

/// Consistency oracle bound to one (class, domain) pair; precomputes the
/// sorted order / feature embedding once so subset queries stay cheap.
class Oracle {
 public:
  Oracle(FunctionClass cls, const FiniteDomain& dom) : cls_(std::move(cls)), dom_(&dom) {
    using K = FunctionClass::Kind;
    switch (cls_.kind) {
      case K::IntervalUnion:
      case K::Alternating:
        require(dom.kind() == DomainKind::RealLine, "class needs colinear real points");
        init_line_order([&](int i) { return dom.real_point(i)[0]; });
        if (cls_.kind == K::Alternating) alternation_bound_ = cls_.k;
        break;
      case K::Halfspace:
        require_real_dim(cls_.n);
        for (int i = 0; i < dom.size(); ++i) features_.push_back(dom.real_point(i));
        break;
      case K::HalfspaceIntersection: {
        require_real_dim(cls_.n);
        for (int i = 0; i < dom.size(); ++i) params_.push_back(moment_parameter(dom.real_point(i)));
        init_line_order([&](int i) { return params_[i]; });
        alternation_bound_ = (cls_.n % 2 == 0) ? cls_.n * cls_.k : (cls_.n - 1) * cls_.k;
        break;
      }
      case K::Ptf:
        if (cls_.ptf_domain == FunctionClass::PtfDomain::Cube) {
          require(dom.kind() == DomainKind::Cube && dom.dimension() == cls_.n,
                  "ptf cube oracle needs cube points of matching dimension");
          for (int i = 0; i < dom.size(); ++i) {
            auto emb = monomial_embed(cube_to_pm1(dom.bit_point(i)), cls_.k);
            RealVec v(emb.size());
            for (size_t j = 0; j < emb.size(); ++j) v[j] = emb[j];
            features_.push_back(std::move(v));
          }
        } else {
          require_real_dim(cls_.n);
          auto exps = exponent_vectors(cls_.n, cls_.k);
          if (exps.size() > 5000) throw BudgetError("ptf real oracle: feature space too large");
          for (int i = 0; i < dom.size(); ++i) {
            const auto& p = dom.real_point(i);
            RealVec v;
            v.reserve(exps.size());
            for (const auto& e : exps) {
              Rat prod = 1;
              for (int j = 0; j < cls_.n; ++j)
                for (int t = 0; t < e[j]; ++t) prod *= p[j];
              v.push_back(prod);
            }
            features_.push_back(std::move(v));
          }
        }
        break;
      case K::RealDecisionTree: {
        require_real_dim(cls_.n);
        int coord = active_coordinate();
        for (int i = 0; i < dom.size(); ++i) params_.push_back(dom.real_point(i)[coord]);
        init_line_order([&](int i) { return params_[i]; });
        alternation_bound_ = cls_.k;
        break;
      }
      case K::BooleanDecisionTree:
        require(dom.kind() == DomainKind::Cube && dom.dimension() == cls_.n,
                "boolean tree oracle needs cube points of matching dimension");
        break;
      case K::Junta:
        require(dom.kind() == DomainKind::Cube && dom.dimension() == cls_.n,
                "junta oracle needs cube points of matching dimension");
        if (cls_.k <= cls_.n && binomial(cls_.n, cls_.k) > 1000000)
          throw BudgetError("junta oracle: too many candidate coordinate sets");
        break;
      case K::Monotone:
        require(dom.kind() == DomainKind::PosetElems, "monotone oracle needs poset elements");
        if (cls_.poset && cls_.poset.get() != dom.poset_ptr().get() &&
            cls_.poset->size() != dom.poset().size())
          throw DomainError("monotone oracle: domain poset mismatch");
        break;
      case K::SymmetricThreshold:
        require(dom.kind() == DomainKind::Abstract && dom.ground_size() == cls_.n,
                "symmetric oracle needs abstract points over [n]");
        break;
      case K::HyperplaneArrangement:
        require(dom.kind() == DomainKind::Abstract &&
                    dom.ground_size() == static_cast<int>(cls_.functionals.size()),
                "arrangement oracle needs abstract points over the functional index set");
        break;
    }
  }

  const FunctionClass& cls() const { return cls_; }
  const FiniteDomain& domain() const { return *dom_; }

  /// Position of a domain point along the underlying line (line classes only).
  int line_rank(int domain_index) const { return rank_.at(domain_index); }
  int alternation_bound() const { return alternation_bound_; }

  /// True iff some member of the class agrees with `labels` on the subset
  /// (given as domain indices; labels aligned with `subset`).
  bool consistent(const std::vector<int>& subset, const std::vector<std::uint8_t>& labels) const {
    if (subset.size() != labels.size()) throw std::invalid_argument("consistent: size mismatch");
    if (subset.empty()) return true;
    using K = FunctionClass::Kind;
    switch (cls_.kind) {
      case K::IntervalUnion: {
        auto seq = line_sequence(subset, labels);
        return ones_blocks(seq) <= cls_.k;
      }
      case K::Alternating: {
        auto seq = line_sequence(subset, labels);
        return alternation_count(seq) <= cls_.k;
      }
      case K::HalfspaceIntersection:
      case K::RealDecisionTree: {
        auto seq = line_sequence(subset, labels);
        return alternation_count(seq) <= alternation_bound_;
      }
      case K::Halfspace:
      case K::Ptf: {
        std::vector<std::vector<Rat>> pts;
        pts.reserve(subset.size());
        for (int i : subset) pts.push_back(features_[i]);
        return linear_separability(pts, labels);
      }
      case K::BooleanDecisionTree: {
        std::vector<BitVec> pts;
        pts.reserve(subset.size());
        for (int i : subset) pts.push_back(dom_->bit_point(i));
        auto best = min_tree_size_bruteforce(pts, labels, cls_.k);
        return best.has_value();
      }
      case K::Junta: {
        return junta_consistent(subset, labels);
      }
      case K::Monotone: {
        const Poset& p = dom_->poset();
        for (size_t i = 0; i < subset.size(); ++i)
          for (size_t j = 0; j < subset.size(); ++j) {
            if (i == j) continue;
            int a = dom_->index_point(subset[i]);
            int b = dom_->index_point(subset[j]);
            if (p.less(a, b) && labels[i] == 1 && labels[j] == 0) return false;
          }
        return true;
      }
      case K::SymmetricThreshold: {
        int ones = 0;
        for (auto b : labels) ones += b;
        return ones <= cls_.k;
      }
      case K::HyperplaneArrangement: {
        int d = static_cast<int>(cls_.functionals[0].size()) - 1;
        std::vector<LinCon> cons;
        for (size_t i = 0; i < subset.size(); ++i) {
          const auto& row = cls_.functionals[dom_->index_point(subset[i])];
          LinCon c;
          c.a.assign(d, Rat(0));
          if (labels[i]) {
            // t + w.x >= 0  ->  -w.x <= t
            for (int j = 0; j < d; ++j) c.a[j] = -row[j + 1];
            c.rel = Rel::Le;
            c.b = row[0];
          } else {
            // t + w.x < 0  ->  w.x < -t
            for (int j = 0; j < d; ++j) c.a[j] = row[j + 1];
            c.rel = Rel::Lt;
            c.b = -row[0];
          }
          cons.push_back(std::move(c));
        }
        return lp_feasible(d, cons).feasible;
      }
    }
    return false;
  }

  bool consistent_all(const std::vector<std::uint8_t>& labels) const {
    std::vector<int> all(dom_->size());
    std::iota(all.begin(), all.end(), 0);
    return consistent(all, labels);
  }

 private:
  void require(bool cond, const char* msg) const {
    if (!cond) throw DomainError(std::string(cls_.name()) + ": " + msg);
  }
  void require_real_dim(int n) const {
    require((dom_->kind() == DomainKind::RealSpace && dom_->dimension() == n) ||
                (dom_->kind() == DomainKind::RealLine && n == 1),
            "class needs real points of matching dimension");
  }

  template <typename Param>
  void init_line_order(Param param) {
    order_.resize(dom_->size());
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) { return param(a) < param(b); });
    rank_.resize(dom_->size());
    for (int pos = 0; pos < static_cast<int>(order_.size()); ++pos) rank_[order_[pos]] = pos;
  }

  /// Recover x with p = psi_n(x); rejects points off the embedded curve.
  Rat moment_parameter(const RealVec& p) const {
    int n = cls_.n;
    Rat x;
    if (n % 2 == 0) {
      x = p[0];
      Rat pw = 1;
      for (int i = 0; i < n; ++i) {
        pw *= x;
        if (p[i] != pw) throw DomainError(cls_.name() + ": point is not on the moment curve");
      }
    } else {
      if (p[0] != 0) throw DomainError(cls_.name() + ": point is not on the moment curve");
      x = (n >= 2) ? p[1] : Rat(0);
      Rat pw = 1;
      for (int i = 1; i < n; ++i) {
        pw *= x;
        if (p[i] != pw) throw DomainError(cls_.name() + ": point is not on the moment curve");
      }
    }
    return x;
  }

  int active_coordinate() const {
    // Axis-colinear: all points agree outside a single coordinate.
    if (dom_->size() <= 1) return 0;
    int coord = -1;
    const auto& p0 = dom_->real_point(0);
    for (int i = 1; i < dom_->size(); ++i) {
      const auto& p = dom_->real_point(i);
      for (int j = 0; j < cls_.n; ++j) {
        if (p[j] != p0[j]) {
          if (coord < 0) coord = j;
          if (coord != j)
            throw DomainError(cls_.name() + ": points must be colinear along one axis");
        }
      }
    }
    return coord < 0 ? 0 : coord;
  }

  std::vector<std::uint8_t> line_sequence(const std::vector<int>& subset,
                                          const std::vector<std::uint8_t>& labels) const {
    std::vector<std::pair<int, std::uint8_t>> tmp;
    tmp.reserve(subset.size());
    for (size_t i = 0; i < subset.size(); ++i) tmp.emplace_back(rank_[subset[i]], labels[i]);
    std::sort(tmp.begin(), tmp.end());
    std::vector<std::uint8_t> seq(tmp.size());
    for (size_t i = 0; i < tmp.size(); ++i) seq[i] = tmp[i].second;
    return seq;
  }

  static int ones_blocks(const std::vector<std::uint8_t>& seq) {
    int blocks = 0;
    for (size_t i = 0; i < seq.size(); ++i)
      if (seq[i] == 1 && (i == 0 || seq[i - 1] == 0)) ++blocks;
    return blocks;
  }

  bool junta_consistent(const std::vector<int>& subset, const std::vector<std::uint8_t>& labels) const {
    int n = cls_.n, k = cls_.k;
    if (k >= n) return true;
    std::vector<int> J(k);
    std::iota(J.begin(), J.end(), 0);
    auto conflict_free = [&]() {
      std::map<std::vector<std::uint8_t>, std::uint8_t> seen;
      for (size_t i = 0; i < subset.size(); ++i) {
        const auto& p = dom_->bit_point(subset[i]);
        std::vector<std::uint8_t> key(k);
        for (int j = 0; j < k; ++j) key[j] = p[J[j]];
        auto [it, inserted] = seen.emplace(std::move(key), labels[i]);
        if (!inserted && it->second != labels[i]) return false;
      }
      return true;
    };
    // Iterate all k-subsets of [n] in lexicographic order.
    for (;;) {
      if (conflict_free()) return true;
      int i = k - 1;
      while (i >= 0 && J[i] == n - k + i) --i;
      if (i < 0) return false;
      ++J[i];
      for (int j = i + 1; j < k; ++j) J[j] = J[j - 1] + 1;
    }
  }

  FunctionClass cls_;
  const FiniteDomain* dom_;
  std::vector<int> order_, rank_;
  std::vector<Rat> params_;
  std::vector<RealVec> features_;
  int alternation_bound_ = 0;
};

/// One-shot consistency, matching the operation contract.
inline bool consistent(const FunctionClass& cls, const FiniteDomain& dom,
                       const std::vector<std::uint8_t>& labels) {
  Oracle o(cls, dom);
  return o.consistent_all(labels);
}

}  // namespace vcprop
