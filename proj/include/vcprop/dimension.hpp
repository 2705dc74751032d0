#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_set>
#include <vector>

#include "vcprop/classes.hpp"
#include "vcprop/core.hpp"
#include "vcprop/rational.hpp"

namespace vcprop {

struct DimensionBudget {
  int max_shatter_set = 22;             // |T| cap for one shattering test
  int max_growth_set = 22;              // |S| cap for full labelling enumeration
  long long max_oracle_calls = 1000000; // cap per dimension computation
};

struct ShatterCertificate {
  std::vector<int> subset;             // domain indices of the first failure
  std::vector<std::uint8_t> labels;    // unrealisable labelling on it
};

struct DimensionReport {
  int vc = 0;
  int lvc = 0;
  Int growth = 0;
  Int shattering_number = 0;
  Int sauer_bound = 0;  // sum_{i<=vc} C(|S|, i)
  bool is_maximum = false;
  bool is_shatter_extremal = false;
  bool lvc_equals_vc = false;
};

namespace detail {

class CallCounter {
 public:
  CallCounter(long long cap) : cap_(cap) {}
  void spend(long long amount = 1) {
    used_ += amount;
    if (used_ > cap_) throw BudgetError("dimension computation exceeded its oracle-call budget");
  }

 private:
  long long cap_;
  long long used_ = 0;
};

inline bool shattered_by_oracle(const Oracle& oracle, const std::vector<int>& subset,
                                CallCounter& counter, ShatterCertificate* cert) {
  int t = static_cast<int>(subset.size());
  std::vector<std::uint8_t> labels(t);
  for (std::uint64_t mask = 0; mask < (1ULL << t); ++mask) {
    for (int i = 0; i < t; ++i) labels[i] = (mask >> i) & 1;
    counter.spend();
    if (!oracle.consistent(subset, labels)) {
      if (cert) {
        cert->subset = subset;
        cert->labels = labels;
      }
      return false;
    }
  }
  return true;
}

/// Visits all size-k subsets of [n] in lexicographic order until the
/// callback returns false.
template <typename Fn>
inline void for_each_subset(int n, int k, Fn fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k == 0) {
    fn(idx);
    return;
  }
  if (k > n) return;
  for (;;) {
    if (!fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

inline bool is_shattered(const Oracle& oracle, const std::vector<int>& subset,
                         DimensionBudget budget = {}, ShatterCertificate* cert = nullptr) {
  if (static_cast<int>(subset.size()) > budget.max_shatter_set)
    throw BudgetError("is_shattered: subset too large for exhaustive labelling check");
  detail::CallCounter counter(budget.max_oracle_calls);
  return detail::shattered_by_oracle(oracle, subset, counter, cert);
}

/// Exact VC dimension on the oracle's domain. Scans sizes upward and stops
/// as soon as no subset of the current size is shattered (shattering is
/// closed downward).
inline int vc_dim(const Oracle& oracle, DimensionBudget budget = {}) {
  int n = oracle.domain().size();
  detail::CallCounter counter(budget.max_oracle_calls);
  int best = 0;
  for (int k = 1; k <= n; ++k) {
    if (k > budget.max_shatter_set)
      throw BudgetError("vc_dim: candidate subset size exceeds the shattering budget");
    bool found = false;
    detail::for_each_subset(n, k, [&](const std::vector<int>& subset) {
      if (detail::shattered_by_oracle(oracle, subset, counter, nullptr)) {
        found = true;
        return false;
      }
      return true;
    });
    if (!found) return best;
    best = k;
  }
  return best;
}

/// Exact LVC dimension: largest k such that every size-k subset is
/// shattered. Reports the first failing subset/labelling when asked.
inline int lvc_dim(const Oracle& oracle, DimensionBudget budget = {},
                   ShatterCertificate* cert = nullptr) {
  int n = oracle.domain().size();
  detail::CallCounter counter(budget.max_oracle_calls);
  for (int k = 1; k <= n; ++k) {
    if (k > budget.max_shatter_set)
      throw BudgetError("lvc_dim: candidate subset size exceeds the shattering budget");
    bool all = true;
    detail::for_each_subset(n, k, [&](const std::vector<int>& subset) {
      if (!detail::shattered_by_oracle(oracle, subset, counter, cert)) {
        all = false;
        return false;
      }
      return true;
    });
    if (!all) return k - 1;
  }
  return n;
}

namespace detail {

/// All consistent labellings of the full domain, as bit masks.
inline std::vector<std::uint32_t> consistent_masks(const Oracle& oracle, DimensionBudget budget) {
  int n = oracle.domain().size();
  if (n > budget.max_growth_set) throw BudgetError("growth enumeration: domain too large");
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::uint8_t> labels(n);
  std::vector<std::uint32_t> out;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    for (int i = 0; i < n; ++i) labels[i] = (mask >> i) & 1;
    if (oracle.consistent(all, labels)) out.push_back(static_cast<std::uint32_t>(mask));
  }
  return out;
}

/// Whether the projection of the consistent set onto the subset mask hits
/// all 2^|T| patterns.
inline bool projection_complete(const std::vector<std::uint32_t>& consistent,
                                const std::vector<int>& bits, std::vector<std::uint32_t>& stamp,
                                std::uint32_t& epoch) {
  int t = static_cast<int>(bits.size());
  std::uint32_t want = 1u << t;
  if (consistent.size() < want) return false;
  if (stamp.size() < want) stamp.assign(want, 0);
  ++epoch;
  std::uint32_t seen = 0;
  for (std::uint32_t m : consistent) {
    std::uint32_t pat = 0;
    for (int j = 0; j < t; ++j) pat |= ((m >> bits[j]) & 1u) << j;
    if (stamp[pat] != epoch) {
      stamp[pat] = epoch;
      if (++seen == want) return true;
    }
  }
  return false;
}

struct LatticeScan {
  Int shattering_number = 0;
  int vc = 0;
  int lvc = 0;
};

/// Level-wise walk over the shattered-set lattice (shattered sets are
/// closed under subsets, so level k candidates extend level k-1 sets).
inline LatticeScan scan_shattered_lattice(int n, const std::vector<std::uint32_t>& consistent) {
  LatticeScan out;
  if (consistent.empty()) return out;  // no member functions: nothing shattered
  out.shattering_number = 1;           // the empty set
  std::vector<std::uint32_t> level{0u};
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  int k = 0;
  while (!level.empty() && k < n) {
    std::unordered_set<std::uint32_t> prev(level.begin(), level.end());
    std::vector<std::uint32_t> next;
    std::unordered_set<std::uint32_t> tried;
    for (std::uint32_t base : level) {
      for (int e = 0; e < n; ++e) {
        if (base & (1u << e)) continue;
        std::uint32_t cand = base | (1u << e);
        if (!tried.insert(cand).second) continue;
        bool all_sub = true;
        for (int r = 0; r < n && all_sub; ++r)
          if (cand & (1u << r))
            if (!prev.count(cand & ~(1u << r))) all_sub = false;
        if (!all_sub) continue;
        std::vector<int> bits;
        for (int b = 0; b < n; ++b)
          if (cand & (1u << b)) bits.push_back(b);
        if (projection_complete(consistent, bits, stamp, epoch)) next.push_back(cand);
      }
    }
    if (next.empty()) break;
    ++k;
    out.shattering_number += static_cast<long long>(next.size());
    out.vc = k;
    if (Int(static_cast<long long>(next.size())) == binomial(n, k) && out.lvc == k - 1) out.lvc = k;
    level = std::move(next);
  }
  return out;
}

}  // namespace detail

struct GrowthShattering {
  Int growth = 0;
  Int shattering_number = 0;
};

inline GrowthShattering growth_and_shattering(const Oracle& oracle, DimensionBudget budget = {}) {
  auto consistent = detail::consistent_masks(oracle, budget);
  auto scan = detail::scan_shattered_lattice(oracle.domain().size(), consistent);
  return {Int(static_cast<long long>(consistent.size())), scan.shattering_number};
}

inline DimensionReport classify_extremal(const Oracle& oracle, DimensionBudget budget = {}) {
  int n = oracle.domain().size();
  auto consistent = detail::consistent_masks(oracle, budget);
  auto scan = detail::scan_shattered_lattice(n, consistent);
  DimensionReport rep;
  rep.vc = scan.vc;
  rep.lvc = scan.lvc;
  rep.growth = Int(static_cast<long long>(consistent.size()));
  rep.shattering_number = scan.shattering_number;
  rep.sauer_bound = binomial_le(n, scan.vc);
  rep.is_shatter_extremal = (rep.growth == rep.shattering_number);
  rep.lvc_equals_vc = (rep.lvc == rep.vc);
  rep.is_maximum = rep.is_shatter_extremal && (rep.shattering_number == rep.sauer_bound);
  return rep;
}

}  // namespace vcprop
