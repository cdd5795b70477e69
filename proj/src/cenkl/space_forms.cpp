#include <algorithm>
#include <functional>

#include "tame/cenkl.hpp"

namespace tame::cenkl {

// ---------------------------------------------------------------------------
// T_n^{*,q}

const CubicalModel::Block& CubicalModel::block(int n, int p) const {
  auto key = std::make_pair(n, p);
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return it->second;
  Block b;
  b.basis = cubical_basis(n, p, q_);
  for (std::size_t i = 0; i < b.basis.size(); ++i) b.index.emplace(b.basis[i], static_cast<std::uint32_t>(i));
  return blocks_.emplace(key, std::move(b)).first->second;
}

const std::vector<FormMono>& CubicalModel::basis(int n, int p) const { return block(n, p).basis; }

QVec CubicalModel::encode(const CubicalForm& w, int p) const {
  const Block& b = block(w.n(), p);
  QVec v;
  for (const auto& [m, c] : w.terms()) {
    auto it = b.index.find(m);
    if (it == b.index.end())
      fail(ErrorCode::FiltrationViolation, "form term " + to_string(m) + " outside T_" + std::to_string(w.n()) + "^{" +
                                               std::to_string(p) + "," + std::to_string(q_) + "}");
    v.emplace_back(it->second, c);
  }
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

CubicalForm CubicalModel::decode(int n, int p, const QVec& v) const {
  const auto& b = basis(n, p);
  CubicalForm w(n, q_);
  for (const auto& [i, c] : v) w.add(b.at(i), c);
  return w;
}

QVec CubicalModel::face(int n, int p, int i, const QVec& v) const {
  return encode(face_pullback(decode(n, p, v), i), p);
}

QVec CubicalModel::degeneracy(int n, int p, int j, const QVec& v) const {
  return encode(degeneracy_pullback(decode(n, p, v), j), p);
}

QVec CubicalModel::d(int n, int p, const QVec& v) const { return encode(form_d(decode(n, p, v)), p + 1); }

// ---------------------------------------------------------------------------
// C^*(Delta[n]) and T (x) C

std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  if (size < 0 || size > n + 1) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

struct SubsetTable {
  std::vector<std::vector<int>> list;
  std::map<std::vector<int>, std::uint32_t> index;
};

const SubsetTable& subset_table(int n, int size) {
  thread_local std::map<std::pair<int, int>, SubsetTable> cache;
  auto key = std::make_pair(n, size);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SubsetTable t;
  t.list = subsets(n, size);
  for (std::size_t i = 0; i < t.list.size(); ++i) t.index.emplace(t.list[i], static_cast<std::uint32_t>(i));
  return cache.emplace(key, std::move(t)).first->second;
}

std::size_t subset_count(int n, int size) { return size < 1 || size > n + 1 ? 0 : subset_table(n, size).list.size(); }

// Simplicial operators on the cochain e_T of Delta[n].
std::vector<std::pair<std::uint32_t, long>> cochain_face(int n, const std::vector<int>& t, int i) {
  if (std::binary_search(t.begin(), t.end(), i)) return {};
  std::vector<int> s;
  for (int v : t) s.push_back(v < i ? v : v - 1);
  return {{subset_table(n - 1, static_cast<int>(s.size())).index.at(s), 1}};
}

std::vector<std::pair<std::uint32_t, long>> cochain_degeneracy(int n, const std::vector<int>& t, int j) {
  std::vector<int> base;
  bool hit = false;
  for (int v : t) {
    if (v == j) hit = true;
    base.push_back(v <= j ? v : v + 1);
  }
  const auto& tab = subset_table(n + 1, static_cast<int>(t.size()));
  std::vector<std::pair<std::uint32_t, long>> out{{tab.index.at(base), 1}};
  if (hit) {
    auto other = base;
    *std::find(other.begin(), other.end(), j) = j + 1;
    out.emplace_back(tab.index.at(other), 1);
  }
  return out;
}

std::vector<std::pair<std::uint32_t, long>> cochain_coboundary(int n, const std::vector<int>& t) {
  std::vector<std::pair<std::uint32_t, long>> out;
  if (static_cast<int>(t.size()) > n) return out;
  const auto& tab = subset_table(n, static_cast<int>(t.size()) + 1);
  for (int v = 0; v <= n; ++v) {
    if (std::binary_search(t.begin(), t.end(), v)) continue;
    auto s = t;
    auto pos = std::lower_bound(s.begin(), s.end(), v);
    long sign = (pos - s.begin()) % 2 ? -1 : 1;
    s.insert(pos, v);
    out.emplace_back(tab.index.at(s), sign);
  }
  return out;
}

void sort_vec(QVec& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  QVec out;
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second == 0) out.pop_back();
    } else if (e.second != 0) {
      out.push_back(std::move(e));
    }
  }
  v.swap(out);
}

}  // namespace

std::size_t TensorModel::offset(int n, int p, int a) const {
  std::size_t off = 0;
  for (int b = 0; b < a; ++b) off += t_.dim(n, b) * subset_count(n, p - b + 1);
  return off;
}

std::size_t TensorModel::dim(int n, int p) const { return offset(n, p, std::min(p, n) + 1); }

std::uint32_t TensorModel::index(int n, int p, int a, std::uint32_t form, std::uint32_t subset) const {
  return static_cast<std::uint32_t>(offset(n, p, a) + form * subset_count(n, p - a + 1) + subset);
}

namespace {

// Splits a vector of degree p into (a, form, subset, coefficient) entries.
template <class F>
void for_each_entry(const TensorModel& m, int n, int p, const QVec& v, F&& f) {
  int a = 0;
  for (const auto& [idx, c] : v) {
    while (a + 1 <= std::min(p, n) && m.offset(n, p, a + 1) <= idx) ++a;
    std::size_t local = idx - m.offset(n, p, a);
    std::size_t ns = subset_count(n, p - a + 1);
    f(a, static_cast<std::uint32_t>(local / ns), static_cast<std::uint32_t>(local % ns), c);
  }
}

}  // namespace

QVec TensorModel::face(int n, int p, int i, const QVec& v) const {
  QVec out;
  for_each_entry(*this, n, p, v, [&](int a, std::uint32_t form, std::uint32_t sub, const Rational& c) {
    const auto& t = subset_table(n, p - a + 1).list[sub];
    auto cf = cochain_face(n, t, i);
    if (cf.empty()) return;
    QVec w = t_.face(n, a, i, QVec{{form, Rational(1)}});
    for (const auto& [k, wc] : w)
      for (const auto& [s, sc] : cf) out.emplace_back(index(n - 1, p, a, k, s), c * wc * sc);
  });
  sort_vec(out);
  return out;
}

QVec TensorModel::degeneracy(int n, int p, int j, const QVec& v) const {
  QVec out;
  for_each_entry(*this, n, p, v, [&](int a, std::uint32_t form, std::uint32_t sub, const Rational& c) {
    const auto& t = subset_table(n, p - a + 1).list[sub];
    auto cs = cochain_degeneracy(n, t, j);
    QVec w = t_.degeneracy(n, a, j, QVec{{form, Rational(1)}});
    for (const auto& [k, wc] : w)
      for (const auto& [s, sc] : cs) out.emplace_back(index(n + 1, p, a, k, s), c * wc * sc);
  });
  sort_vec(out);
  return out;
}

QVec TensorModel::d(int n, int p, const QVec& v) const {
  QVec out;
  for_each_entry(*this, n, p, v, [&](int a, std::uint32_t form, std::uint32_t sub, const Rational& c) {
    if (a + 1 <= n) {
      QVec w = t_.d(n, a, QVec{{form, Rational(1)}});
      for (const auto& [k, wc] : w) out.emplace_back(index(n, p + 1, a + 1, k, sub), c * wc);
    }
    const auto& t = subset_table(n, p - a + 1).list[sub];
    const long sign = a % 2 ? -1 : 1;
    for (const auto& [s, sc] : cochain_coboundary(n, t)) out.emplace_back(index(n, p + 1, a, form, s), c * (sign * sc));
  });
  sort_vec(out);
  return out;
}

// ---------------------------------------------------------------------------
// Mor(X, A)

namespace {

QVec apply_theta(const SimplicialModel& a, int p, const std::vector<int>& theta, const QVec& v) {
  for (std::size_t k = 0; k + 1 < theta.size(); ++k)
    if (theta[k] == theta[k + 1]) {
      std::vector<int> rest(theta);
      rest.erase(rest.begin() + static_cast<long>(k) + 1);
      return a.degeneracy(static_cast<int>(rest.size()) - 1, p, static_cast<int>(k), apply_theta(a, p, rest, v));
    }
  return v;
}

QVec block_of(const MorSpace& s, const SimplicialModel& a, int n, std::uint32_t i, const QVec& family) {
  const std::size_t lo = s.offset[n][i], hi = lo + a.dim(n, s.p);
  QVec out;
  auto it = std::lower_bound(family.begin(), family.end(), lo, [](const auto& e, std::size_t k) { return e.first < k; });
  for (; it != family.end() && it->first < hi; ++it) out.emplace_back(static_cast<std::uint32_t>(it->first - lo), it->second);
  return out;
}

}  // namespace

MorSpace mor_space(const SimplicialSetFin& x, const SimplicialModel& a, int p, const coeff::RingTag& tag) {
  MorSpace s;
  s.p = p;
  s.offset.resize(x.dim() + 1);
  for (int n = 0; n <= x.dim(); ++n)
    for (std::uint32_t i = 0; i < x.count(n); ++i) {
      s.offset[n].push_back(s.ambient);
      s.ambient += a.dim(n, p);
    }
  // Equation blocks (y, i) of size dim(n_y - 1, p); users[base] lists the
  // faces that land on degeneracies of base.
  std::vector<std::vector<std::size_t>> row_offset(x.dim() + 1);
  std::size_t rows = 0;
  std::map<std::pair<int, std::uint32_t>, std::vector<std::tuple<int, std::uint32_t, int, std::vector<int>>>> users;
  for (int n = 1; n <= x.dim(); ++n)
    for (std::uint32_t k = 0; k < x.count(n); ++k) {
      row_offset[n].push_back(rows);
      rows += static_cast<std::size_t>(n + 1) * a.dim(n - 1, p);
      Simplex y = x.simplex(n, k);
      for (int i = 0; i <= n; ++i) {
        Simplex f = x.face(y, i);
        users[{f.base_dim, f.base}].emplace_back(n, k, i, f.theta);
      }
    }
  qq::QMatrix m(rows, s.ambient);
  for (int n = 0; n <= x.dim(); ++n)
    for (std::uint32_t k = 0; k < x.count(n); ++k)
      for (std::size_t e = 0; e < a.dim(n, p); ++e) {
        QVec col;
        const QVec unit{{static_cast<std::uint32_t>(e), Rational(1)}};
        if (n >= 1) {
          const std::size_t bs = a.dim(n - 1, p);
          for (int i = 0; i <= n; ++i)
            for (const auto& [r, c] : a.face(n, p, i, unit))
              col.emplace_back(static_cast<std::uint32_t>(row_offset[n][k] + i * bs + r), c);
        }
        auto it = users.find({n, k});
        if (it != users.end())
          for (const auto& [yn, yk, i, theta] : it->second) {
            const std::size_t bs = a.dim(yn - 1, p);
            for (const auto& [r, c] : apply_theta(a, p, theta, unit))
              col.emplace_back(static_cast<std::uint32_t>(row_offset[yn][yk] + i * bs + r), Rational(-c));
          }
        sort_vec(col);
        m.columns[s.offset[n][k] + e] = std::move(col);
      }
  s.kernel = qq::kernel(m, tag);
  return s;
}

QVec evaluate(const SimplicialSetFin& x, const SimplicialModel& a, const MorSpace& s, const QVec& family,
              const Simplex& at) {
  (void)x;
  return apply_theta(a, s.p, at.theta, block_of(s, a, at.base_dim, at.base, family));
}

MorComplex mor_complex(const SimplicialSetFin& x, const SimplicialModel& a, const coeff::RingTag& tag, int fdeg) {
  MorComplex out;
  const int top = a.top_degree(x.dim());
  for (int p = 0; p <= top + 1; ++p) out.spaces.push_back(mor_space(x, a, p, tag));
  out.complex.tag = tag;
  for (int p = 0; p <= top; ++p) {
    const MorSpace& src = out.spaces[p];
    const MorSpace& dst = out.spaces[p + 1];
    out.complex.fdeg.emplace_back(src.dim(), fdeg);
    qq::QMatrix m(dst.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
      QVec image;
      for (int n = 0; n <= x.dim(); ++n)
        for (std::uint32_t k = 0; k < x.count(n); ++k) {
          QVec b = block_of(src, a, n, k, src.kernel.basis[j]);
          if (b.empty()) continue;
          for (const auto& [r, c] : a.d(n, p, b))
            image.emplace_back(static_cast<std::uint32_t>(dst.offset[n][k] + r), c);
        }
      sort_vec(image);
      auto coords = qq::coordinates(dst.kernel, image);
      if (!coords) fail(ErrorCode::Internal, "differential leaves the compatible families");
      for (std::size_t i = 0; i < coords->size(); ++i)
        if ((*coords)[i] != 0) m.columns[j].emplace_back(static_cast<std::uint32_t>(i), (*coords)[i]);
    }
    out.complex.d.push_back(std::move(m));
  }
  out.spaces.pop_back();
  return out;
}

MorSpace forms_on_space(const SimplicialSetFin& x, int p, int q) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "filtration level must be >= 1");
  CubicalModel t(q);
  return mor_space(x, t, p, coeff::RingTag::localized_up_to(static_cast<std::uint64_t>(q)));
}

std::vector<std::vector<CubicalForm>> family_forms(const SimplicialSetFin& x, const CubicalModel& t,
                                                   const MorSpace& s, const QVec& family) {
  std::vector<std::vector<CubicalForm>> out(x.dim() + 1);
  for (int n = 0; n <= x.dim(); ++n)
    for (std::uint32_t k = 0; k < x.count(n); ++k) out[n].push_back(t.decode(n, s.p, block_of(s, t, n, k, family)));
  return out;
}

QVec family_vector(const CubicalModel& t, const MorSpace& s, const std::vector<std::vector<CubicalForm>>& forms) {
  QVec out;
  for (std::size_t n = 0; n < forms.size(); ++n)
    for (std::size_t k = 0; k < forms[n].size(); ++k)
      for (const auto& [r, c] : t.encode(forms[n][k].with_level(t.level()), s.p))
        out.emplace_back(static_cast<std::uint32_t>(s.offset[n][k] + r), c);
  sort_vec(out);
  return out;
}

// ---------------------------------------------------------------------------
// Simplicial cochains

graded::FilteredComplex cochain_complex(const SimplicialSetFin& x, const coeff::RingTag& tag, int fdeg) {
  graded::FilteredComplex c;
  c.tag = tag;
  for (int n = 0; n <= x.dim(); ++n) c.fdeg.emplace_back(x.count(n), fdeg);
  for (int n = 0; n <= x.dim(); ++n) {
    qq::QMatrix m(x.count(n + 1), x.count(n));
    for (std::uint32_t k = 0; k < x.count(n + 1); ++k) {
      Simplex y = x.simplex(n + 1, k);
      for (int i = 0; i <= n + 1; ++i) {
        Simplex f = x.face(y, i);
        if (!f.nondegenerate()) continue;
        m.columns[f.base].emplace_back(k, Rational(i % 2 ? -1 : 1));
      }
    }
    for (auto& col : m.columns) sort_vec(col);
    c.d.push_back(std::move(m));
  }
  return c;
}

QVec cup(const SimplicialSetFin& x, int p, const QVec& a, int q, const QVec& b) {
  QVec out;
  if (p < 0 || q < 0 || p + q > x.dim()) return out;
  std::vector<int> front(p + 1), back(q + 1);
  for (int i = 0; i <= p; ++i) front[i] = i;
  for (int i = 0; i <= q; ++i) back[i] = p + i;
  for (std::uint32_t k = 0; k < x.count(p + q); ++k) {
    Simplex s = x.simplex(p + q, k);
    Simplex f = x.sub_face(s, front), g = x.sub_face(s, back);
    if (!f.nondegenerate() || !g.nondegenerate()) continue;
    Rational v = qq::value_at(a, f.base) * qq::value_at(b, g.base);
    if (v != 0) out.emplace_back(k, v);
  }
  return out;
}

}  // namespace tame::cenkl
