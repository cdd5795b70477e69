#include "tame/graded.hpp"

namespace tame::graded {

namespace {

bool vanishes(const qq::QMatrix& m, const RingTag& tag) {
  for (const auto& col : m.columns)
    for (const auto& [i, a] : col) {
      if (!tag.is_prime_field()) return false;
      if (coeff::residue_of(a, tag.param) != 0) return false;
    }
  return true;
}

qq::QMatrix zero(std::size_t rows, std::size_t cols) { return qq::QMatrix(rows, cols); }

void check_entries(const qq::QMatrix& m, const RingTag& tag, const char* what) {
  for (const auto& col : m.columns)
    for (const auto& [i, a] : col)
      if (!coeff::in_ring(a, tag)) fail(ErrorCode::NotInRing, std::string(what) + " entry " + a.get_str() + " not in " + tag.to_string());
}

}  // namespace

qq::QMatrix FilteredComplex::diff(int n) const {
  if (n >= 0 && n < static_cast<int>(d.size())) return d[n];
  return zero(dim(n + 1), dim(n));
}

void FilteredComplex::validate() const {
  if (d.size() != fdeg.size()) fail(ErrorCode::InvalidArgument, "one differential per degree required");
  for (int n = 0; n <= top(); ++n) {
    const auto& m = d[n];
    if (m.cols != dim(n) || m.rows != dim(n + 1) || m.columns.size() != m.cols)
      fail(ErrorCode::InvalidArgument, "differential in degree " + std::to_string(n) + " has the wrong shape");
    check_entries(m, tag, "differential");
    for (std::size_t j = 0; j < m.cols; ++j)
      for (const auto& [i, a] : m.columns[j])
        if (fdeg[n + 1][i] > fdeg[n][j])
          fail(ErrorCode::FiltrationViolation, "differential raises filtration in degree " + std::to_string(n));
    if (n < top() && !vanishes(d[n + 1] * m, tag))
      fail(ErrorCode::DifferentialNotSquareZero, "d o d != 0 in degree " + std::to_string(n));
  }
}

FilteredComplex FilteredComplex::slice(int q) const {
  FilteredComplex out;
  out.tag = tag;
  std::vector<std::vector<std::int64_t>> remap(fdeg.size());
  for (std::size_t n = 0; n < fdeg.size(); ++n) {
    out.fdeg.emplace_back();
    for (std::size_t i = 0; i < fdeg[n].size(); ++i) {
      if (fdeg[n][i] <= q) {
        remap[n].push_back(static_cast<std::int64_t>(out.fdeg[n].size()));
        out.fdeg[n].push_back(fdeg[n][i]);
      } else {
        remap[n].push_back(-1);
      }
    }
  }
  for (int n = 0; n <= top(); ++n) {
    qq::QMatrix m(out.dim(n + 1), out.dim(n));
    for (std::size_t j = 0; j < fdeg[n].size(); ++j) {
      if (remap[n][j] < 0) continue;
      auto& col = m.columns[remap[n][j]];
      for (const auto& [i, a] : d[n].columns[j]) col.emplace_back(static_cast<std::uint32_t>(remap[n + 1][i]), a);
    }
    out.d.push_back(std::move(m));
  }
  return out;
}

qq::QMatrix CochainMap::at(int n, std::size_t rows, std::size_t cols) const {
  if (n >= 0 && n < static_cast<int>(f.size())) return f[n];
  return zero(rows, cols);
}

void check_cochain_map(const FilteredComplex& v, const FilteredComplex& w, const CochainMap& f) {
  if (!(v.tag == w.tag)) fail(ErrorCode::TagMismatch, "cochain map between complexes over different rings");
  const int top = std::max(v.top(), w.top());
  for (int n = 0; n <= top; ++n) {
    qq::QMatrix fn = f.at(n, w.dim(n), v.dim(n));
    if (fn.rows != w.dim(n) || fn.cols != v.dim(n))
      fail(ErrorCode::InvalidArgument, "cochain map in degree " + std::to_string(n) + " has the wrong shape");
    for (std::size_t j = 0; j < fn.cols; ++j)
      for (const auto& [i, a] : fn.columns[j])
        if (w.fdeg[n][i] > v.fdeg[n][j])
          fail(ErrorCode::FiltrationViolation, "map raises filtration in degree " + std::to_string(n));
    qq::QMatrix fn1 = f.at(n + 1, w.dim(n + 1), v.dim(n + 1));
    qq::QMatrix lhs = w.diff(n) * fn, rhs = fn1 * v.diff(n);
    qq::QMatrix diffm(lhs.rows, lhs.cols);
    for (std::size_t j = 0; j < lhs.cols; ++j) {
      diffm.columns[j] = lhs.columns[j];
      qq::axpy(diffm.columns[j], coeff::Rational(-1), rhs.columns[j]);
    }
    if (!vanishes(diffm, v.tag)) fail(ErrorCode::NotCochainMap, "d f != f d in degree " + std::to_string(n));
  }
}

namespace {

FilteredComplex tensor_impl(const FilteredComplex& a, const FilteredComplex& b, bool filtrationwise) {
  if (!(a.tag == b.tag)) fail(ErrorCode::TagMismatch, "tensor of complexes over different rings");
  FilteredComplex out;
  out.tag = a.tag;
  const int top = a.top() + b.top();
  // offset[n][k]: start of the block C_a^k (x) C_b^{n-k} inside degree n
  std::vector<std::vector<std::size_t>> offset(top + 2);
  out.fdeg.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    offset[n].assign(n + 1, 0);
    for (int k = 0; k <= n; ++k) {
      offset[n][k] = out.fdeg[n].size();
      for (std::size_t i = 0; i < a.dim(k); ++i)
        for (std::size_t j = 0; j < b.dim(n - k); ++j)
          out.fdeg[n].push_back(filtrationwise ? std::max(a.fdeg[k][i], b.fdeg[n - k][j])
                                               : a.fdeg[k][i] + b.fdeg[n - k][j]);
    }
  }
  for (int n = 0; n <= top; ++n) {
    qq::QMatrix m(out.dim(n + 1), out.dim(n));
    for (int k = 0; k <= n; ++k) {
      const std::size_t bd = b.dim(n - k);
      qq::QMatrix da = a.diff(k), db = b.diff(n - k);
      for (std::size_t i = 0; i < a.dim(k); ++i)
        for (std::size_t j = 0; j < bd; ++j) {
          auto& col = m.columns[offset[n][k] + i * bd + j];
          if (n + 1 <= top) {
            for (const auto& [i2, c] : da.columns[i])
              col.emplace_back(static_cast<std::uint32_t>(offset[n + 1][k + 1] + i2 * b.dim(n - k) + j), c);
            coeff::Rational sign = k % 2 ? -1 : 1;
            for (const auto& [j2, c] : db.columns[j])
              col.emplace_back(static_cast<std::uint32_t>(offset[n + 1][k] + i * b.dim(n + 1 - k) + j2), coeff::Rational(sign * c));
          }
          std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        }
    }
    out.d.push_back(std::move(m));
  }
  return out;
}

}  // namespace

FilteredComplex tensor(const FilteredComplex& a, const FilteredComplex& b) { return tensor_impl(a, b, false); }

FilteredComplex tensor_filtrationwise(const FilteredComplex& a, const FilteredComplex& b) {
  return tensor_impl(a, b, true);
}

FilteredComplex mapping_cone(const FilteredComplex& v, const FilteredComplex& w, const CochainMap& f) {
  check_cochain_map(v, w, f);
  FilteredComplex out;
  out.tag = v.tag;
  const int top = std::max(v.top(), w.top() + 1);
  out.fdeg.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    if (n <= v.top()) out.fdeg[n] = v.fdeg[n];
    if (n >= 1 && n - 1 <= w.top()) out.fdeg[n].insert(out.fdeg[n].end(), w.fdeg[n - 1].begin(), w.fdeg[n - 1].end());
  }
  for (int n = 0; n <= top; ++n) {
    qq::QMatrix m(out.dim(n + 1), out.dim(n));
    if (n + 1 <= top) {
      const std::size_t vn = v.dim(n), vn1 = v.dim(n + 1);
      qq::QMatrix dv = v.diff(n), fn = f.at(n, w.dim(n), vn), dw = w.diff(n - 1);
      for (std::size_t j = 0; j < vn; ++j) {
        auto& col = m.columns[j];
        col = dv.columns[j];
        for (const auto& [i, c] : fn.columns[j]) col.emplace_back(static_cast<std::uint32_t>(vn1 + i), c);
      }
      for (std::size_t j = 0; j < w.dim(n - 1); ++j) {
        auto& col = m.columns[vn + j];
        for (const auto& [i, c] : dw.columns[j]) col.emplace_back(static_cast<std::uint32_t>(vn1 + i), coeff::Rational(-c));
      }
    }
    out.d.push_back(std::move(m));
  }
  return out;
}

FilteredComplex suspension(const FilteredComplex& w) {
  FilteredComplex zero_complex;
  zero_complex.tag = w.tag;
  zero_complex.fdeg.assign(w.fdeg.size(), {});
  for (std::size_t n = 0; n < w.fdeg.size(); ++n) zero_complex.d.emplace_back(0, 0);
  CochainMap f;
  for (std::size_t n = 0; n < w.fdeg.size(); ++n) f.f.emplace_back(w.dim(static_cast<int>(n)), 0);
  return mapping_cone(zero_complex, w, f);
}

FilteredComplex cone(const FilteredComplex& v) {
  CochainMap id;
  for (int n = 0; n <= v.top(); ++n) {
    qq::QMatrix m(v.dim(n), v.dim(n));
    for (std::size_t i = 0; i < v.dim(n); ++i) m.columns[i].emplace_back(static_cast<std::uint32_t>(i), coeff::Rational(1));
    id.f.push_back(std::move(m));
  }
  return mapping_cone(v, v, id);
}

void ElementaryComplex::validate() const {
  if (p < 1 || q < 1) fail(ErrorCode::InvalidArgument, "elementary complex needs p, q >= 1");
  if (coeff::smith_normal_form(eta).rank() != eta.rows())
    fail(ErrorCode::InvalidArgument, "cokernel of eta is not a torsion module");
}

FilteredComplex ElementaryComplex::to_complex() const {
  FilteredComplex out;
  out.tag = eta.tag();
  out.fdeg.resize(p + 2);
  out.fdeg[p].assign(eta.cols(), q);
  out.fdeg[p + 1].assign(eta.rows(), q);
  for (int n = 0; n <= p + 1; ++n) out.d.emplace_back(out.dim(n + 1), out.dim(n));
  for (std::size_t j = 0; j < eta.cols(); ++j)
    for (std::size_t i = 0; i < eta.rows(); ++i)
      if (!eta.at(i, j).is_zero()) out.d[p].columns[j].emplace_back(static_cast<std::uint32_t>(i), eta.at(i, j).rational());
  return out;
}

ModuleDecomposition coker_dual(const ElementaryComplex& v) {
  v.validate();
  coeff::Matrix dual = v.eta.transpose();
  auto factors = coeff::invariant_factors(dual);
  ModuleDecomposition out;
  out.free_rank = dual.rows() - factors.size();
  for (const auto& f : factors)
    if (!f.is_unit()) out.torsion.push_back(f);
  return out;
}

}  // namespace tame::graded
