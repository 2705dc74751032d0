#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vcprop/rational.hpp"
#include "vcprop/rng.hpp"

namespace vcprop {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Strict partial order on {0, ..., n-1}. Relations are transitively closed
/// at construction; cycles are rejected.
class Poset {
 public:
  Poset() = default;
  Poset(int n, const std::vector<std::pair<int, int>>& relations) : n_(n), less_(n * n, false) {
    if (n < 0) throw std::invalid_argument("Poset: negative size");
    for (auto [a, b] : relations) {
      if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("Poset: index out of range");
      if (a == b) throw std::invalid_argument("Poset: reflexive relation");
      less_[a * n + b] = true;
    }
    // Warshall closure.
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (less_[i * n + k])
          for (int j = 0; j < n; ++j)
            if (less_[k * n + j]) less_[i * n + j] = true;
    for (int i = 0; i < n; ++i)
      if (less_[i * n + i]) throw std::invalid_argument("Poset: relation has a cycle");
  }

  /// Bipartite order (X, Y, E): elements 0..n-1 are X, n..2n-1 are Y, and
  /// x < y only across an edge.
  static Poset bipartite(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::pair<int, int>> rel;
    rel.reserve(edges.size());
    for (auto [x, y] : edges) {
      if (x < 0 || x >= n || y < 0 || y >= n) throw std::invalid_argument("Poset::bipartite: bad edge");
      rel.emplace_back(x, n + y);
    }
    return Poset(2 * n, rel);
  }

  int size() const { return n_; }
  bool less(int a, int b) const { return less_[a * n_ + b]; }
  bool comparable(int a, int b) const { return less(a, b) || less(b, a); }

  bool is_antichain(const std::vector<int>& elems) const {
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = i + 1; j < elems.size(); ++j)
        if (comparable(elems[i], elems[j])) return false;
    return true;
  }

  std::vector<std::pair<int, int>> cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (less(i, j)) out.emplace_back(i, j);
    return out;
  }

 private:
  int n_ = 0;
  std::vector<char> less_;
};

enum class DomainKind { RealLine, RealSpace, Cube, PosetElems, Abstract };

using RealVec = std::vector<Rat>;
using BitVec = std::vector<std::uint8_t>;  // entries 0/1

/// One domain point: a real vector, a bit vector, or an index into a poset
/// or abstract ground set.
using Point = std::variant<RealVec, BitVec, int>;

inline std::string domain_kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::RealLine: return "real-line";
    case DomainKind::RealSpace: return "real-space";
    case DomainKind::Cube: return "cube";
    case DomainKind::PosetElems: return "poset";
    case DomainKind::Abstract: return "abstract";
  }
  return "?";
}

/// Ordered finite point set with a uniform kind and dimension and no
/// duplicate points.
class FiniteDomain {
 public:
  FiniteDomain() = default;

  static FiniteDomain real_line(std::vector<Rat> xs) {
    FiniteDomain d;
    d.kind_ = DomainKind::RealLine;
    d.dim_ = 1;
    for (auto& x : xs) d.points_.emplace_back(RealVec{std::move(x)});
    d.validate();
    return d;
  }

  static FiniteDomain real_space(std::vector<RealVec> pts) {
    FiniteDomain d;
    d.kind_ = DomainKind::RealSpace;
    d.dim_ = pts.empty() ? 0 : static_cast<int>(pts[0].size());
    for (auto& p : pts) d.points_.emplace_back(std::move(p));
    d.validate();
    return d;
  }

  static FiniteDomain cube(std::vector<BitVec> pts) {
    FiniteDomain d;
    d.kind_ = DomainKind::Cube;
    d.dim_ = pts.empty() ? 0 : static_cast<int>(pts[0].size());
    for (auto& p : pts) d.points_.emplace_back(std::move(p));
    d.validate();
    return d;
  }

  static FiniteDomain poset_elements(std::shared_ptr<const Poset> poset, std::vector<int> elems) {
    FiniteDomain d;
    d.kind_ = DomainKind::PosetElems;
    d.dim_ = 1;
    d.poset_ = std::move(poset);
    for (int e : elems) {
      if (e < 0 || e >= d.poset_->size()) throw DomainError("poset element out of range");
      d.points_.emplace_back(e);
    }
    d.validate();
    return d;
  }

  static FiniteDomain poset_all(std::shared_ptr<const Poset> poset) {
    std::vector<int> elems(poset->size());
    for (int i = 0; i < poset->size(); ++i) elems[i] = i;
    return poset_elements(std::move(poset), std::move(elems));
  }

  static FiniteDomain abstract(std::vector<int> indices, int ground_size) {
    FiniteDomain d;
    d.kind_ = DomainKind::Abstract;
    d.dim_ = 1;
    d.ground_size_ = ground_size;
    for (int i : indices) {
      if (i < 0 || i >= ground_size) throw DomainError("abstract index out of range");
      d.points_.emplace_back(i);
    }
    d.validate();
    return d;
  }

  static FiniteDomain abstract_all(int ground_size) {
    std::vector<int> idx(ground_size);
    for (int i = 0; i < ground_size; ++i) idx[i] = i;
    return abstract(std::move(idx), ground_size);
  }

  DomainKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  int ground_size() const { return ground_size_; }
  const Poset& poset() const {
    if (!poset_) throw DomainError("domain has no poset");
    return *poset_;
  }
  std::shared_ptr<const Poset> poset_ptr() const { return poset_; }

  int size() const { return static_cast<int>(points_.size()); }
  const Point& point(int i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  const RealVec& real_point(int i) const { return std::get<RealVec>(points_[i]); }
  const BitVec& bit_point(int i) const { return std::get<BitVec>(points_[i]); }
  int index_point(int i) const { return std::get<int>(points_[i]); }

  FiniteDomain subset(const std::vector<int>& idx) const {
    FiniteDomain d;
    d.kind_ = kind_;
    d.dim_ = dim_;
    d.poset_ = poset_;
    d.ground_size_ = ground_size_;
    for (int i : idx) d.points_.push_back(points_.at(i));
    d.validate();
    return d;
  }

 private:
  void validate() const {
    for (const auto& p : points_) {
      bool kind_ok = false;
      switch (kind_) {
        case DomainKind::RealLine:
        case DomainKind::RealSpace:
          kind_ok = std::holds_alternative<RealVec>(p) &&
                    static_cast<int>(std::get<RealVec>(p).size()) == dim_;
          break;
        case DomainKind::Cube:
          kind_ok = std::holds_alternative<BitVec>(p) &&
                    static_cast<int>(std::get<BitVec>(p).size()) == dim_;
          if (kind_ok)
            for (auto b : std::get<BitVec>(p))
              if (b > 1) kind_ok = false;
          break;
        case DomainKind::PosetElems:
        case DomainKind::Abstract:
          kind_ok = std::holds_alternative<int>(p);
          break;
      }
      if (!kind_ok) throw DomainError("inconsistent point kind or dimension in domain");
    }
    std::set<Point> seen(points_.begin(), points_.end());
    if (seen.size() != points_.size()) throw DomainError("duplicate points in domain");
  }

  DomainKind kind_ = DomainKind::Abstract;
  int dim_ = 0;
  int ground_size_ = 0;
  std::vector<Point> points_;
  std::shared_ptr<const Poset> poset_;
};

/// Total 0/1 assignment on a domain, stored in domain order.
struct Labelling {
  std::vector<std::uint8_t> bits;

  Labelling() = default;
  explicit Labelling(std::vector<std::uint8_t> b) : bits(std::move(b)) {
    for (auto v : bits)
      if (v > 1) throw std::invalid_argument("Labelling: non-binary value");
  }
  static Labelling from_mask(std::uint64_t mask, int n) {
    std::vector<std::uint8_t> b(n);
    for (int i = 0; i < n; ++i) b[i] = (mask >> i) & 1;
    return Labelling(std::move(b));
  }
  int size() const { return static_cast<int>(bits.size()); }
  std::uint8_t operator[](int i) const { return bits[i]; }
};

/// Nonnegative weights over a domain summing to exactly 1 (weights are kept
/// as exact rationals; double inputs are converted exactly before
/// normalising).
class FiniteDistribution {
 public:
  FiniteDistribution() = default;
  FiniteDistribution(std::shared_ptr<const FiniteDomain> domain, std::vector<Rat> weights)
      : domain_(std::move(domain)), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != domain_->size())
      throw DomainError("distribution size mismatch");
    Rat total = 0;
    for (const auto& w : weights_) {
      if (w < 0) throw std::invalid_argument("negative weight");
      total += w;
    }
    if (total != 1) throw std::invalid_argument("weights must sum to 1");
    rebuild_support();
  }

  static FiniteDistribution uniform(std::shared_ptr<const FiniteDomain> domain) {
    int n = domain->size();
    if (n == 0) throw std::invalid_argument("uniform: empty domain");
    return FiniteDistribution(std::move(domain), std::vector<Rat>(n, Rat(1, n)));
  }

  /// Uniform over a subset of the domain's points.
  static FiniteDistribution uniform_on(std::shared_ptr<const FiniteDomain> domain,
                                       const std::vector<int>& support) {
    if (support.empty()) throw std::invalid_argument("uniform_on: empty support");
    std::vector<Rat> w(domain->size(), Rat(0));
    for (int i : support) w.at(i) = Rat(1, static_cast<int>(support.size()));
    return FiniteDistribution(std::move(domain), std::move(w));
  }

  const FiniteDomain& domain() const { return *domain_; }
  std::shared_ptr<const FiniteDomain> domain_ptr() const { return domain_; }
  const Rat& weight(int i) const { return weights_[i]; }
  const std::vector<Rat>& weights() const { return weights_; }
  const std::vector<int>& support() const { return support_; }
  Rat min_support_density() const {
    Rat m = 1;
    for (int i : support_) m = std::min(m, weights_[i]);
    return m;
  }

  /// m i.i.d. draws (domain indices); deterministic given the seed.
  std::vector<int> sample(int m, std::uint64_t seed) const {
    if (m < 0) throw std::invalid_argument("sample: negative count");
    std::vector<double> cum;
    cum.reserve(support_.size());
    double acc = 0.0;
    for (int i : support_) {
      acc += to_double(weights_[i]);
      cum.push_back(acc);
    }
    if (!cum.empty()) cum.back() = 1.0;
    Rng rng(seed);
    std::vector<int> out;
    out.reserve(m);
    for (int t = 0; t < m; ++t) {
      double u = rng.uniform01();
      auto it = std::upper_bound(cum.begin(), cum.end(), u);
      size_t k = std::min<size_t>(it - cum.begin(), support_.size() - 1);
      out.push_back(support_[k]);
    }
    return out;
  }

 private:
  void rebuild_support() {
    support_.clear();
    for (int i = 0; i < static_cast<int>(weights_.size()); ++i)
      if (weights_[i] > 0) support_.push_back(i);
  }

  std::shared_ptr<const FiniteDomain> domain_;
  std::vector<Rat> weights_;
  std::vector<int> support_;
};

/// Pr_{x ~ D}[f(x) != g(x)], exact.
inline Rat dist_between(const Labelling& f, const Labelling& g, const FiniteDistribution& D) {
  if (f.size() != D.domain().size() || g.size() != D.domain().size())
    throw DomainError("dist_between: labelling/distribution domain mismatch");
  Rat total = 0;
  for (int i : D.support())
    if (f[i] != g[i]) total += D.weight(i);
  return total;
}

inline FiniteDistribution normalize(std::shared_ptr<const FiniteDomain> domain,
                                    const std::vector<Rat>& raw) {
  if (static_cast<int>(raw.size()) != domain->size()) throw DomainError("normalize: size mismatch");
  Rat total = 0;
  for (const auto& w : raw) {
    if (w < 0) throw std::invalid_argument("normalize: negative weight");
    total += w;
  }
  if (total == 0) throw std::invalid_argument("normalize: all weights zero");
  std::vector<Rat> w(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) w[i] = raw[i] / total;
  return FiniteDistribution(std::move(domain), std::move(w));
}

inline FiniteDistribution normalize(std::shared_ptr<const FiniteDomain> domain,
                                    const std::vector<double>& raw) {
  std::vector<Rat> r(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) r[i] = rat_from_double(raw[i]);
  return normalize(std::move(domain), r);
}

}  // namespace vcprop
