#include <algorithm>

#include "tame/qq.hpp"

namespace tame::qq {

void axpy(QVec& y, const Rational& a, const QVec& x) {
  if (a == 0 || x.empty()) return;
  QVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, Rational(a * x[j].second));
      ++j;
    } else {
      Rational v = y[i].second + a * x[j].second;
      if (v != 0) out.emplace_back(y[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  y.swap(out);
}

Rational value_at(const QVec& v, std::uint32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& e, std::uint32_t k) { return e.first < k; });
  return it != v.end() && it->first == index ? it->second : Rational(0);
}

QVec QMatrix::apply(const QVec& x) const {
  QVec y;
  for (const auto& [j, a] : x) axpy(y, a, columns[j]);
  return y;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols != o.rows) fail(ErrorCode::InvalidArgument, "matrix shape mismatch in product");
  QMatrix out(rows, o.cols);
  for (std::size_t j = 0; j < o.cols; ++j) out.columns[j] = apply(o.columns[j]);
  return out;
}

bool QMatrix::is_zero() const {
  for (const auto& c : columns)
    if (!c.empty()) return false;
  return true;
}

bool is_unit(const Rational& x, const RingTag& tag) {
  if (x == 0) return false;
  if (tag.is_field()) return true;
  return coeff::in_ring(Rational(1 / x), tag);
}

namespace {

// Row-major working copy with a column occupancy index that may hold stale
// entries; callers check the actual value.
struct Work {
  std::vector<QVec> rows;
  std::vector<std::vector<std::uint32_t>> col_rows;

  explicit Work(const QMatrix& m) : rows(m.rows), col_rows(m.cols) {
    for (std::size_t j = 0; j < m.cols; ++j)
      for (const auto& [i, a] : m.columns[j]) {
        rows[i].emplace_back(static_cast<std::uint32_t>(j), a);
        col_rows[j].push_back(i);
      }
  }

  void row_axpy(std::size_t dst, const Rational& a, std::size_t src) {
    std::vector<std::uint32_t> before;
    before.reserve(rows[dst].size());
    for (const auto& e : rows[dst]) before.push_back(e.first);
    axpy(rows[dst], a, rows[src]);
    for (const auto& e : rows[dst])
      if (!std::binary_search(before.begin(), before.end(), e.first)) col_rows[e.first].push_back(dst);
  }
};

struct Elimination {
  std::vector<int> pivot_row_of_col;  // -1 if not a pivot column
  std::vector<bool> row_used;
  std::size_t rank = 0;
};

// Pivots on units until none remain. With full = true, pivot columns are
// cleared in every row (reduced echelon form) and pivots scaled to 1.
Elimination eliminate(Work& w, std::size_t cols, const RingTag& tag, bool full) {
  Elimination e;
  e.pivot_row_of_col.assign(cols, -1);
  e.row_used.assign(w.rows.size(), false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < cols; ++c) {
      if (e.pivot_row_of_col[c] >= 0) continue;
      auto& lst = w.col_rows[c];
      std::sort(lst.begin(), lst.end());
      lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
      std::vector<std::uint32_t> live;
      int best = -1;
      for (std::uint32_t r : lst) {
        Rational a = value_at(w.rows[r], static_cast<std::uint32_t>(c));
        if (a == 0) continue;
        live.push_back(r);
        if (e.row_used[r]) continue;
        if (!is_unit(a, tag)) continue;
        if (best < 0 || w.rows[r].size() < w.rows[best].size()) best = static_cast<int>(r);
      }
      lst = live;
      if (best < 0) continue;
      Rational piv = value_at(w.rows[best], static_cast<std::uint32_t>(c));
      if (full) {
        Rational s = 1 / piv;
        for (auto& x : w.rows[best]) x.second *= s;
        piv = 1;
      }
      for (std::uint32_t r : live) {
        if (static_cast<int>(r) == best) continue;
        if (!full && e.row_used[r]) continue;
        Rational a = value_at(w.rows[r], static_cast<std::uint32_t>(c));
        w.row_axpy(r, Rational(-a / piv), best);
      }
      lst.assign(1, static_cast<std::uint32_t>(best));
      e.row_used[best] = true;
      e.pivot_row_of_col[c] = best;
      ++e.rank;
      progress = true;
    }
  }
  return e;
}

coeff::Matrix stuck_block(const Work& w, const Elimination& e, const std::vector<std::uint32_t>& cols,
                          const RingTag& tag, std::vector<std::size_t>* rows_out = nullptr) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    if (e.row_used[r]) continue;
    for (const auto& x : w.rows[r])
      if (e.pivot_row_of_col[x.first] < 0) {
        rows.push_back(r);
        break;
      }
  }
  coeff::Matrix m(rows.size(), cols.size(), tag);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Rational a = value_at(w.rows[rows[i]], cols[j]);
      if (a != 0) m.at(i, j) = coeff::Scalar::from_rational(a, tag);
    }
  if (rows_out) *rows_out = rows;
  return m;
}

}  // namespace

Reduction reduce(const QMatrix& m, const RingTag& tag) {
  Work w(m);
  Elimination e = eliminate(w, m.cols, tag, false);
  Reduction out;
  out.rank = e.rank;
  std::vector<std::uint32_t> rest;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (e.pivot_row_of_col[c] < 0) rest.push_back(static_cast<std::uint32_t>(c));
  coeff::Matrix s = stuck_block(w, e, rest, tag);
  if (s.rows() > 0 && !s.is_zero()) {
    for (const auto& d : coeff::invariant_factors(s)) {
      ++out.rank;
      if (!d.is_unit()) out.torsion.push_back(d.rational());
    }
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

std::size_t rank(const QMatrix& m) { return reduce(m, RingTag::rationals()).rank; }

Kernel kernel(const QMatrix& m, const RingTag& tag) {
  Work w(m);
  Elimination e = eliminate(w, m.cols, tag, true);
  Kernel k;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (e.pivot_row_of_col[c] < 0) k.free.push_back(static_cast<std::uint32_t>(c));
  coeff::Matrix s = stuck_block(w, e, k.free, tag);

  auto fill = [&](const QVec& on_free) {
    QVec v = on_free;
    for (std::size_t c = 0; c < m.cols; ++c) {
      int r = e.pivot_row_of_col[c];
      if (r < 0) continue;
      Rational x = 0;
      for (const auto& [f, a] : on_free) x -= value_at(w.rows[r], f) * a;
      if (x != 0) v.emplace_back(static_cast<std::uint32_t>(c), x);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };

  if (s.rows() == 0 || s.is_zero()) {
    for (std::uint32_t f : k.free) k.basis.push_back(fill(QVec{{f, Rational(1)}}));
    return k;
  }
  k.unit_positions = false;
  coeff::SmithForm sf = coeff::smith_normal_form(s);
  std::size_t rk = sf.rank();
  for (std::size_t j = rk; j < k.free.size(); ++j) {
    QVec on_free;
    for (std::size_t i = 0; i < k.free.size(); ++i) {
      const auto& a = sf.v.at(i, j);
      if (!a.is_zero()) on_free.emplace_back(k.free[i], a.rational());
    }
    k.basis.push_back(fill(on_free));
  }
  return k;
}

std::optional<std::vector<Rational>> coordinates(const Kernel& k, const QVec& v) {
  std::vector<Rational> x(k.basis.size());
  if (k.unit_positions) {
    for (std::size_t i = 0; i < k.basis.size(); ++i) x[i] = value_at(v, k.free[i]);
  } else {
    // Dense solve over Q on the basis columns.
    std::vector<std::uint32_t> idx;
    for (const auto& b : k.basis)
      for (const auto& e : b) idx.push_back(e.first);
    for (const auto& e : v) idx.push_back(e.first);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const std::size_t n = k.basis.size(), rows = idx.size();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(n + 1));
    auto pos = [&](std::uint32_t i) { return std::lower_bound(idx.begin(), idx.end(), i) - idx.begin(); };
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [i, c] : k.basis[j]) a[pos(i)][j] = c;
    for (const auto& [i, c] : v) a[pos(i)][n] = c;
    std::size_t r = 0;
    std::vector<std::size_t> pc;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
      std::size_t p = r;
      while (p < rows && a[p][c] == 0) ++p;
      if (p == rows) continue;
      std::swap(a[p], a[r]);
      Rational inv = 1 / a[r][c];
      for (auto& y : a[r]) y *= inv;
      for (std::size_t q = 0; q < rows; ++q) {
        if (q == r || a[q][c] == 0) continue;
        Rational f = a[q][c];
        for (std::size_t j = 0; j <= n; ++j) a[q][j] -= f * a[r][j];
      }
      pc.push_back(c);
      ++r;
    }
    for (std::size_t i = 0; i < r; ++i) x[pc[i]] = a[i][n];
  }
  QVec check;
  for (std::size_t i = 0; i < x.size(); ++i) axpy(check, x[i], k.basis[i]);
  if (check != v) return std::nullopt;
  return x;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> reduce_mod(const QVec& v, std::uint64_t l) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& [i, a] : v) {
    auto r = static_cast<std::uint32_t>(coeff::residue_of(a, l));
    if (r) out.emplace_back(i, r);
  }
  return out;
}

}  // namespace tame::qq
