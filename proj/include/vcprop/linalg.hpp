#pragma once

#include <vector>

#include "vcprop/rational.hpp"

namespace vcprop {

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline int integer_rank(std::vector<std::vector<Int>> a) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(a[0].size());
  Int prev = 1;
  int rank = 0;
  int col = 0;
  for (int r = 0; r < rows && col < cols; ++col) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[r], a[pivot]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
    ++rank;
  }
  return rank;
}

inline int rational_rank(const std::vector<std::vector<Rat>>& a) {
  // Clear denominators row-by-row; rank is invariant under row scaling.
  std::vector<std::vector<Int>> m;
  m.reserve(a.size());
  for (const auto& row : a) {
    Int lcm = 1;
    for (const auto& x : row) {
      Int d = denominator(x);
      lcm = lcm / gcd(lcm, d) * d;
    }
    std::vector<Int> out(row.size());
    for (size_t j = 0; j < row.size(); ++j) out[j] = numerator(row[j]) * (lcm / denominator(row[j]));
    m.push_back(std::move(out));
  }
  return integer_rank(std::move(m));
}

inline Rat rational_det(std::vector<std::vector<Rat>> a) {
  int n = static_cast<int>(a.size());
  Rat det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      Rat factor = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= factor * a[c][j];
    }
  }
  return det;
}

/// True when the points (columns of equal length) are affinely independent.
inline bool affinely_independent(const std::vector<std::vector<Rat>>& pts) {
  if (pts.size() <= 1) return true;
  std::vector<std::vector<Rat>> diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rat> d(pts[0].size());
    for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(std::move(d));
  }
  return rational_rank(diffs) == static_cast<int>(diffs.size());
}

}  // namespace vcprop
