#include <algorithm>

#include "tame/cenkl.hpp"

namespace tame::cenkl {

namespace {

struct Sides {
  CubicalModel t;
  TensorModel tc;
  MorComplex forms, tensor;
  graded::FilteredComplex cochains;
  graded::CochainMap forms_leg, cochain_leg;

  Sides(const SimplicialSetFin& x, int q) : t(q), tc(q) {
    const auto tag = coeff::RingTag::localized_up_to(static_cast<std::uint64_t>(q));
    forms = mor_complex(x, t, tag, q);
    tensor = mor_complex(x, tc, tag, q);
    cochains = cochain_complex(x, tag, q);
    build_legs(x);
  }

  QVec to_tensor(int p, const QVec& ambient) const {
    auto c = qq::coordinates(tensor.spaces[p].kernel, ambient);
    if (!c) fail(ErrorCode::Internal, "leg image is not a compatible family");
    QVec out;
    for (std::size_t i = 0; i < c->size(); ++i)
      if ((*c)[i] != 0) out.emplace_back(static_cast<std::uint32_t>(i), (*c)[i]);
    return out;
  }

  // w |-> w (x) 1 with 1 the sum of the vertex cochains.
  QVec forms_image(const SimplicialSetFin& x, int p, const QVec& family) const {
    const MorSpace& src = forms.spaces[p];
    const MorSpace& dst = tensor.spaces[p];
    QVec amb;
    for (int n = 0; n <= x.dim(); ++n)
      for (std::uint32_t k = 0; k < x.count(n); ++k) {
        const std::size_t lo = src.offset[n][k], hi = lo + t.dim(n, p);
        for (const auto& [i, c] : family) {
          if (i < lo || i >= hi) continue;
          for (int v = 0; v <= n; ++v)
            amb.emplace_back(static_cast<std::uint32_t>(dst.offset[n][k] +
                                                        tc.index(n, p, p, static_cast<std::uint32_t>(i - lo), v)),
                             c);
        }
      }
    std::sort(amb.begin(), amb.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return to_tensor(p, amb);
  }

  // c |-> 1 (x) x^* c
  QVec cochain_image(const SimplicialSetFin& x, int p, const QVec& c) const {
    const MorSpace& dst = tensor.spaces[p];
    QVec amb;
    for (int n = p; n <= x.dim(); ++n) {
      const std::uint32_t one = 0;  // the constant monomial is first in T_n^{0,q}
      auto faces = subsets(n, p + 1);
      for (std::uint32_t k = 0; k < x.count(n); ++k) {
        Simplex s = x.simplex(n, k);
        for (std::uint32_t f = 0; f < faces.size(); ++f) {
          Simplex g = x.sub_face(s, faces[f]);
          if (!g.nondegenerate()) continue;
          Rational v = qq::value_at(c, g.base);
          if (v != 0) amb.emplace_back(static_cast<std::uint32_t>(dst.offset[n][k] + tc.index(n, p, 0, one, f)), v);
        }
      }
    }
    std::sort(amb.begin(), amb.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return to_tensor(p, amb);
  }

  void build_legs(const SimplicialSetFin& x) {
    for (int p = 0; p <= forms.complex.top(); ++p) {
      qq::QMatrix m(tensor.complex.dim(p), forms.complex.dim(p));
      for (std::size_t j = 0; j < m.cols; ++j) m.columns[j] = forms_image(x, p, forms.spaces[p].kernel.basis[j]);
      forms_leg.f.push_back(std::move(m));
    }
    for (int p = 0; p <= cochains.top(); ++p) {
      qq::QMatrix m(tensor.complex.dim(p), cochains.dim(p));
      for (std::size_t j = 0; j < m.cols; ++j)
        m.columns[j] = cochain_image(x, p, QVec{{static_cast<std::uint32_t>(j), Rational(1)}});
      cochain_leg.f.push_back(std::move(m));
    }
  }
};

std::vector<std::size_t> chain_dims(const graded::FilteredComplex& c) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= c.top(); ++n) out.push_back(c.dim(n));
  return out;
}

}  // namespace

ZigzagReport zigzag_compare(const SimplicialSetFin& x, int q, std::optional<std::uint64_t> field, int max_degree) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "filtration level must be >= 1");
  if (field && (!coeff::is_prime(*field) || *field <= static_cast<std::uint64_t>(q)))
    fail(ErrorCode::InvalidArgument, "the comparison over F_l needs a prime l > q");
  if (max_degree < 0) fail(ErrorCode::InvalidArgument, "max degree must be >= 0");
  x.validate();
  Sides s(x, q);
  ZigzagReport r;
  r.q = q;
  r.field = field;
  r.max_degree = max_degree;
  std::optional<fp::u32> f;
  if (field) f = static_cast<fp::u32>(*field);
  r.forms = homology::complex_cohomology(s.forms.complex, f);
  r.cochains = homology::complex_cohomology(s.cochains, f);
  r.tensor = homology::complex_cohomology(s.tensor.complex, f);
  r.forms_leg = homology::quasi_iso_check(s.forms.complex, s.tensor.complex, s.forms_leg, f, max_degree);
  r.cochain_leg = homology::quasi_iso_check(s.cochains, s.tensor.complex, s.cochain_leg, f, max_degree);
  r.forms_dims = chain_dims(s.forms.complex);
  r.cochain_dims = chain_dims(s.cochains);
  r.tensor_dims = chain_dims(s.tensor.complex);
  r.ok = true;
  for (int n = 0; n <= max_degree; ++n) r.ok = r.ok && r.forms_leg.iso[n] && r.cochain_leg.iso[n];
  return r;
}

namespace {

// Solves A y = b over Q; nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(const qq::QMatrix& a, const QVec& b) {
  qq::QMatrix aug(a.rows, a.cols + 1);
  for (std::size_t j = 0; j < a.cols; ++j) aug.columns[j] = a.columns[j];
  for (const auto& [i, c] : b) aug.columns[a.cols].emplace_back(i, Rational(-c));
  auto k = qq::kernel(aug, coeff::RingTag::rationals());
  for (const auto& v : k.basis) {
    Rational s = qq::value_at(v, static_cast<std::uint32_t>(a.cols));
    if (s == 0) continue;
    std::vector<Rational> y(a.cols);
    for (const auto& [i, c] : v)
      if (i < a.cols) y[i] = c / s;
    return y;
  }
  return std::nullopt;
}

bool in_image(const qq::QMatrix& d, const QVec& v) {
  if (v.empty()) return true;
  return solve(d, v).has_value();
}

}  // namespace

MultiplicativityReport check_multiplicativity(const SimplicialSetFin& x, int q1, int q2) {
  if (q1 < 1 || q2 < 1) fail(ErrorCode::InvalidArgument, "filtration levels must be >= 1");
  x.validate();
  MultiplicativityReport rep;
  Sides s1(x, q1), s2(x, q2), s12(x, q1 + q2);
  const auto& c = s12.cochains;
  if (c.top() < 1) return rep;
  auto z1 = qq::kernel(c.diff(1), coeff::RingTag::rationals());

  // A form cocycle at level q matched to the cocycle z through (T (x) C)(X).
  auto match = [&](const Sides& s, const QVec& z) -> std::optional<QVec> {
    const std::size_t nt = s.forms.complex.dim(1), n0 = s.tensor.complex.dim(0);
    const std::size_t r1 = s.tensor.complex.dim(1), r2 = s.forms.complex.dim(2);
    qq::QMatrix a(r1 + r2, nt + n0);
    const qq::QMatrix dt = s.forms.complex.diff(1), dtc = s.tensor.complex.diff(0);
    for (std::size_t j = 0; j < nt; ++j) {
      a.columns[j] = s.forms_leg.f[1].columns[j];
      for (const auto& [i, v] : dt.columns[j]) a.columns[j].emplace_back(static_cast<std::uint32_t>(r1 + i), v);
    }
    for (std::size_t j = 0; j < n0; ++j)
      for (const auto& [i, v] : dtc.columns[j]) a.columns[nt + j].emplace_back(i, Rational(-v));
    auto y = solve(a, s.cochain_leg.f[1].apply(z));
    if (!y) return std::nullopt;
    QVec w;
    for (std::size_t j = 0; j < nt; ++j)
      if ((*y)[j] != 0) qq::axpy(w, (*y)[j], s.forms.spaces[1].kernel.basis[j]);
    return w;
  };

  for (std::size_t i = 0; i < z1.basis.size(); ++i)
    for (std::size_t j = 0; j < z1.basis.size(); ++j) {
      const QVec& za = z1.basis[i];
      const QVec& zb = z1.basis[j];
      auto wa = match(s1, za);
      auto wb = match(s2, zb);
      if (!wa || !wb) {
        rep.ok = false;
        rep.failure = "no form cocycle matches cochain basis vector " + std::to_string(wa ? j : i);
        return rep;
      }
      ++rep.pairs;
      if (x.dim() < 2) continue;  // both products vanish
      auto fa = family_forms(x, s1.t, s1.forms.spaces[1], *wa);
      auto fb = family_forms(x, s2.t, s2.forms.spaces[1], *wb);
      std::vector<std::vector<CubicalForm>> prod(fa.size());
      for (std::size_t n = 0; n < fa.size(); ++n)
        for (std::size_t k = 0; k < fa[n].size(); ++k) prod[n].push_back(form_wedge(fa[n][k], fb[n][k]));
      QVec form_side = s12.forms_image(x, 2, family_vector(s12.t, s12.forms.spaces[2], prod));
      QVec cochain_side = s12.cochain_image(x, 2, cup(x, 1, za, 1, zb));
      QVec diff = form_side;
      qq::axpy(diff, Rational(-1), cochain_side);
      if (!in_image(s12.tensor.complex.diff(1), diff)) {
        rep.ok = false;
        rep.failure = "products of cocycles " + std::to_string(i) + " and " + std::to_string(j) + " differ";
        return rep;
      }
    }
  return rep;
}

}  // namespace tame::cenkl
