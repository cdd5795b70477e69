#include "tame/cenkl.hpp"

namespace tame::cenkl {

namespace {

fp::SparseVec mod(const QVec& v, unsigned l) {
  fp::SparseVec out;
  for (const auto& [i, c] : v) {
    auto r = static_cast<fp::u32>(coeff::residue_of(c, l));
    if (r) out.emplace_back(i, r);
  }
  return out;
}

QVec lift(const fp::SparseVec& v) {
  QVec out;
  for (const auto& [i, c] : v) out.emplace_back(i, Rational(c));
  return out;
}

}  // namespace

MasseyReport massey_filtration_demo(unsigned l, int skeleton_dim) {
  if (!coeff::is_prime(l) || l == 2) fail(ErrorCode::InvalidArgument, "the demonstration needs an odd prime l");
  if (skeleton_dim < 3) fail(ErrorCode::InvalidArgument, "skeleton dimension must be >= 3");
  MasseyReport r;
  r.l = l;
  r.skeleton = skeleton_dim;
  SimplicialSetFin x = bar_construction(l, skeleton_dim);
  x.validate();
  auto c = cochain_complex(x, coeff::RingTag::prime_field(l), 0);
  auto h = homology::complex_cohomology(c, static_cast<fp::u32>(l));
  r.h1 = h[1].rank;
  r.h2 = h[2].rank;

  // u[g] = g
  QVec u;
  for (std::uint32_t k = 0; k < x.count(1); ++k) u.emplace_back(k, Rational(k + 1));
  r.defining_system.push_back(u);

  // d: C^1 -> C^2 with tracking, for solving d(a) = target
  std::vector<fp::SparseVec> d1;
  for (const auto& col : c.diff(1).columns) d1.push_back(mod(col, l));
  fp::Echelon b2(l, x.count(2), true);
  for (const auto& col : d1) b2.insert(col);

  // a_m with d(a_m) = sum_{k=1}^{m-1} a_k a_{m-k}; all a_k have degree 1.
  for (unsigned m = 2; m < l; ++m) {
    QVec target;
    for (unsigned k = 1; k < m; ++k) qq::axpy(target, Rational(1), cup(x, 1, r.defining_system[k - 1], 1, r.defining_system[m - k - 1]));
    fp::SparseVec comb;
    if (!b2.reduce(mod(target, l), &comb).empty()) {
      r.note = "no uniform defining system at length " + std::to_string(m);
      return r;
    }
    if (m == 2) r.square_exact = true;
    r.defining_system.push_back(lift(comb));
  }
  QVec prod;
  for (unsigned k = 1; k < l; ++k) qq::axpy(prod, Rational(1), cup(x, 1, r.defining_system[k - 1], 1, r.defining_system[l - k - 1]));
  r.product = lift(mod(prod, l));

  // B^2 + u Z^1 + Z^1 u
  fp::Echelon span(l, x.count(2));
  for (const auto& col : d1) span.insert(col);
  for (const auto& z : fp::nullspace(d1, x.count(2), l)) {
    QVec zq = lift(z);
    span.insert(mod(cup(x, 1, zq, 1, u), l));
    span.insert(mod(cup(x, 1, u, 1, zq), l));
  }
  r.nonzero = !span.contains(mod(r.product, l));

  // T^{p,l}(X) is a Q_l-module and l is a unit of Q_l, so tensoring with F_l
  // kills it. The rank on the 1-skeleton shows the module itself is nonzero.
  const auto ql = coeff::RingTag::localized_up_to(l);
  r.forms_vanish = coeff::in_ring(Rational(1, l), ql);
  r.forms_rank = forms_on_space(bar_construction(l, 1), 1, static_cast<int>(l)).dim();
  r.note = "l = " + std::to_string(l) + " is invertible in Q_" + std::to_string(l) +
           ", so T^{p," + std::to_string(l) + "}(X) (x) F_" + std::to_string(l) + " = 0 for every p";
  return r;
}

}  // namespace tame::cenkl
