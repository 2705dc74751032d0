#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vcprop {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion (default 95%).
inline Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 1.959963984540054) {
  if (trials <= 0) throw std::invalid_argument("wilson_interval: trials <= 0");
  if (successes < 0 || successes > trials) throw std::invalid_argument("wilson_interval: bad successes");
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double centre = (p + z2 / (2.0 * n)) / denom;
  double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Upper quantile of chi-square via the Wilson-Hilferty cube approximation;
/// adequate for the goodness-of-fit gates used here (df >= 30).
inline double chi_square_quantile(double df, double z_upper) {
  double t = 1.0 - 2.0 / (9.0 * df) + z_upper * std::sqrt(2.0 / (9.0 * df));
  return df * t * t * t;
}

/// Pearson statistic against given expected counts.
inline double chi_square_stat(const std::vector<std::int64_t>& observed,
                              const std::vector<double>& expected) {
  if (observed.size() != expected.size()) throw std::invalid_argument("chi_square_stat: size mismatch");
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_stat: nonpositive expected count");
    double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

}  // namespace vcprop
