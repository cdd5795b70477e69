#pragma once

// Dense linear algebra over Q and F_p written independently of the library,
// used as the reference side of the tests.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "tame/qq.hpp"

namespace oracle {

using Q = mpq_class;
using Dense = std::vector<std::vector<Q>>;  // row-major

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Q>(c, Q(0))); }

inline Dense identity(std::size_t n) {
  Dense m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline std::size_t cols_of(const Dense& m, std::size_t fallback = 0) { return m.empty() ? fallback : m[0].size(); }

inline Dense mul(const Dense& a, const Dense& b, std::size_t inner, std::size_t bc) {
  Dense out = zeros(a.size(), bc);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < bc; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline std::size_t rank(Dense a) {
  std::size_t r = 0;
  const std::size_t cols = cols_of(a);
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Q f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

inline Dense inverse(const Dense& m) {
  const std::size_t n = m.size();
  Dense a = m, inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Q s = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= s;
      inv[c][k] /= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Q f = a[i][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[i][k] -= f * a[c][k];
        inv[i][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

inline tame::qq::QMatrix to_qmatrix(const Dense& m, std::size_t rows, std::size_t cols) {
  tame::qq::QMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (m[i][j] != 0) out.columns[j].push_back({static_cast<std::uint32_t>(i), m[i][j]});
  return out;
}

inline Dense from_qmatrix(const tame::qq::QMatrix& m) {
  Dense out = zeros(m.rows, m.cols);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (const auto& [i, x] : m.columns[j]) out[i][j] = x;
  return out;
}

// Stacks the columns of a and b side by side.
inline Dense hcat(const Dense& a, std::size_t ac, const Dense& b, std::size_t bc) {
  Dense out = zeros(a.size(), ac + bc);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < ac; ++j) out[i][j] = a[i][j];
    for (std::size_t j = 0; j < bc; ++j) out[i][ac + j] = b[i][j];
  }
  return out;
}

// Columns spanning the kernel of a (rows x cols).
inline Dense kernel(const Dense& a, std::size_t cols) {
  Dense r = a;
  std::vector<int> pivot_of_col(cols, -1);
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < r.size(); ++c) {
    std::size_t p = row;
    while (p < r.size() && r[p][c] == 0) ++p;
    if (p == r.size()) continue;
    std::swap(r[p], r[row]);
    const Q s = r[row][c];
    for (auto& x : r[row]) x /= s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i == row || r[i][c] == 0) continue;
      const Q f = r[i][c];
      for (std::size_t k = 0; k < cols; ++k) r[i][k] -= f * r[row][k];
    }
    pivot_of_col[c] = static_cast<int>(row++);
  }
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] < 0) free.push_back(c);
  Dense out = zeros(cols, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    out[free[k]][k] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) out[c][k] = -r[pivot_of_col[c]][free[k]];
  }
  return out;
}

// Random unitriangular change of basis with small integer entries.
inline Dense unitriangular(std::size_t n, std::mt19937_64& rng, bool upper) {
  Dense m = identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((upper ? j > i : j < i) && rng() % 2) m[i][j] = static_cast<long>(rng() % 5) - 2;
  return m;
}

}  // namespace oracle
