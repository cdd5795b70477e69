#include <algorithm>

#include "tame/coeff.hpp"
#include "tame/fp.hpp"

namespace tame::fp {

u32 Field::inv(u32 a) const { return static_cast<u32>(coeff::mod_inverse(a, p)); }

void axpy(SparseVec& y, u32 a, const SparseVec& x, const Field& f) {
  if (a == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, f.mul(a, x[j].second));
      ++j;
    } else {
      u32 v = f.add(y[i].second, f.mul(a, x[j].second));
      if (v) out.emplace_back(y[i].first, v);
      ++i;
      ++j;
    }
  }
  y.swap(out);
}

u32 value_at(const SparseVec& v, u32 index) {
  auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(index, u32{0}));
  return it != v.end() && it->first == index ? it->second : 0;
}

Echelon::Echelon(u32 p, std::size_t dim, bool track)
    : f_{p}, dim_(dim), track_(track), pivot_row_(dim, -1) {}

SparseVec Echelon::reduce(const SparseVec& v, SparseVec* comb) const {
  SparseVec w = v;
  SparseVec c;
  // Rows are kept with a leading entry 1 at their pivot; entries are
  // eliminated from the left so each pivot is visited at most once.
  std::size_t pos = 0;
  while (pos < w.size()) {
    u32 idx = w[pos].first;
    int r = pivot_row_[idx];
    if (r < 0) {
      ++pos;
      continue;
    }
    u32 a = w[pos].second;
    axpy(w, f_.neg(a), rows_[r], f_);
    if (track_ && comb) axpy(c, a, combs_[r], f_);
    pos = static_cast<std::size_t>(std::lower_bound(w.begin(), w.end(), std::make_pair(idx, u32{0})) - w.begin());
  }
  if (comb) *comb = std::move(c);
  return w;
}

bool Echelon::insert(const SparseVec& v) {
  std::size_t id = inserted_++;
  SparseVec c;
  SparseVec w = reduce(v, track_ ? &c : nullptr);
  if (w.empty()) return false;
  if (track_) {
    // w = v - sum c_i v_i
    for (auto& e : c) e.second = f_.neg(e.second);
    axpy(c, 1, SparseVec{{static_cast<u32>(id), 1}}, f_);
  }
  u32 lead = w.front().first;
  u32 s = f_.inv(w.front().second);
  for (auto& e : w) e.second = f_.mul(e.second, s);
  if (track_)
    for (auto& e : c) e.second = f_.mul(e.second, s);
  pivot_row_[lead] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(w));
  combs_.push_back(std::move(c));
  return true;
}

std::size_t dense_rank(std::vector<u32> a, std::size_t rows, std::size_t cols, u32 p) {
  Field f{p};
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (a[r * cols + c]) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    u32 inv = f.inv(a[rank * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[rank * cols + j] = f.mul(a[rank * cols + j], inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      u32 m = a[r * cols + c];
      if (!m) continue;
      for (std::size_t j = c; j < cols; ++j)
        if (a[rank * cols + j]) a[r * cols + j] = f.sub(a[r * cols + j], f.mul(m, a[rank * cols + j]));
    }
    ++rank;
  }
  return rank;
}

std::size_t rank(const std::vector<SparseVec>& columns, std::size_t rows, u32 p) {
  if (columns.empty() || rows == 0) return 0;
  if (rows < 2000 && columns.size() < 2000) {
    std::vector<u32> a(columns.size() * rows, 0);
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (auto [i, v] : columns[j]) a[j * rows + i] = v;
    return dense_rank(std::move(a), columns.size(), rows, p);
  }
  Echelon e(p, rows);
  for (const auto& c : columns) e.insert(c);
  return e.rank();
}

std::vector<SparseVec> nullspace(const std::vector<SparseVec>& columns, std::size_t rows, u32 p) {
  Field f{p};
  Echelon e(p, rows, true);
  std::vector<SparseVec> out;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    SparseVec c;
    SparseVec rem = e.reduce(columns[j], &c);
    if (rem.empty()) {
      // columns[j] = sum c_i columns[i]
      for (auto& x : c) x.second = f.neg(x.second);
      axpy(c, 1, SparseVec{{static_cast<u32>(j), 1}}, f);
      out.push_back(std::move(c));
    }
    e.insert(columns[j]);
  }
  return out;
}

std::optional<AffineSpace> solve_affine(const std::vector<u32>& a_in, std::size_t rows, std::size_t cols,
                                        const std::vector<u32>& b_in, u32 p) {
  Field f{p};
  const std::size_t w = cols + 1;
  std::vector<u32> a(rows * w);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r * w + c] = a_in[r * cols + c];
    a[r * w + cols] = b_in[r];
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (a[r * w + c]) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < w; ++j) std::swap(a[piv * w + j], a[rank * w + j]);
    u32 inv = f.inv(a[rank * w + c]);
    for (std::size_t j = 0; j < w; ++j) a[rank * w + j] = f.mul(a[rank * w + j], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      u32 m = a[r * w + c];
      if (!m) continue;
      for (std::size_t j = 0; j < w; ++j)
        if (a[rank * w + j]) a[r * w + j] = f.sub(a[r * w + j], f.mul(m, a[rank * w + j]));
    }
    pivot_col.push_back(static_cast<int>(c));
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (a[r * w + cols]) return std::nullopt;
  AffineSpace out;
  out.particular.assign(cols, 0);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t r = 0; r < rank; ++r) {
    out.particular[pivot_col[r]] = a[r * w + cols];
    is_pivot[pivot_col[r]] = true;
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<u32> dir(cols, 0);
    dir[c] = 1;
    for (std::size_t r = 0; r < rank; ++r) dir[pivot_col[r]] = f.neg(a[r * w + c]);
    out.directions.push_back(std::move(dir));
  }
  return out;
}

}  // namespace tame::fp
