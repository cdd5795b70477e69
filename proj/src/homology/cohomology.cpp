#include "tame/homology.hpp"

namespace tame::homology {

CohomologyReport cohomology(const FpAlgebra& a, int max_degree, bool with_basis) {
  if (max_degree < 0) fail(ErrorCode::InvalidArgument, "truncation degree must be >= 0");
  CohomologyReport r;
  r.field = a.p();
  r.level = a.level();
  r.max_degree = max_degree;
  // Ranks of d out of degrees -1..max_degree; the slice in degree N+1 makes
  // degree N exact.
  std::vector<std::size_t> rk(max_degree + 2, 0);
  std::vector<std::vector<fp::SparseVec>> cols(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) {
    cols[n] = a.d_columns(n);
    rk[n + 1] = fp::rank(cols[n], a.basis(n + 1).size(), a.p());
  }
  for (int n = 0; n <= max_degree; ++n) {
    std::size_t dim = a.basis(n).size();
    std::size_t h = dim - rk[n + 1] - rk[n];
    r.slice_dims.push_back(dim);
    r.dims.push_back(h);
    r.intervals.emplace_back(h, h);
    if (with_basis) {
      // Cocycles modulo coboundaries: extend an echelon of B^n by Z^n.
      fp::Echelon e(a.p(), dim);
      if (n > 0)
        for (const auto& c : cols[n - 1]) e.insert(c);
      std::vector<FpPoly> reps;
      for (const auto& z : fp::nullspace(cols[n], a.basis(n + 1).size(), a.p()))
        if (e.insert(z)) reps.push_back(a.from_coords(z, n));
      r.representatives.push_back(std::move(reps));
    }
  }
  return r;
}

CohomologyReport cohomology(const graded::FreeCGDA& a, std::optional<int> level, fp::u32 l, int max_degree,
                            bool with_basis) {
  if (level && static_cast<long>(l) <= *level) {
    CohomologyReport r;
    r.field = l;
    r.level = level;
    r.max_degree = max_degree;
    r.dims.assign(max_degree + 1, 0);
    r.intervals.assign(max_degree + 1, {0, 0});
    r.slice_dims.assign(max_degree + 1, 0);
    if (with_basis) r.representatives.assign(max_degree + 1, {});
    r.note = "l = " + std::to_string(l) + " is invertible at filtration level " + std::to_string(*level) +
             ", so the slice tensored with F_l is zero";
    return r;
  }
  return cohomology(FpAlgebra::from(a, l, level), max_degree, with_basis);
}

FpWitness is_coboundary(const FpAlgebra& a, const FpPoly& x) {
  FpWitness w;
  if (x.empty()) {
    w.exact = true;
    return w;
  }
  int deg = *a.degree(x);
  if (!a.d(x).empty()) fail(ErrorCode::NotACocycle, "target is not a cocycle");
  if (deg == 0) return w;
  const auto cols = a.d_columns(deg - 1);
  fp::Echelon e(a.p(), a.basis(deg).size(), true);
  for (const auto& c : cols) e.insert(c);
  fp::SparseVec comb;
  fp::SparseVec rem = e.reduce(a.coords(x, deg), &comb);
  if (!rem.empty()) return w;
  w.exact = true;
  w.witness = a.from_coords(comb, deg - 1);
  if (a.d(w.witness) != x) fail(ErrorCode::Internal, "coboundary witness does not verify");
  return w;
}

CoboundaryWitness is_coboundary(const graded::FreeCGDA& a, const graded::Element& x, fp::u32 l, int max_degree,
                                std::optional<int> level) {
  FpAlgebra fa = FpAlgebra::from(a, l, level);
  FpPoly px = fa.from_element(x);
  auto deg = fa.degree(px);
  if (deg && *deg > max_degree)
    fail(ErrorCode::InvalidArgument, "target degree exceeds the truncation bound");
  FpWitness w = is_coboundary(fa, px);
  CoboundaryWitness out;
  out.exact = w.exact;
  out.target = fa.to_element(px);
  out.witness = fa.to_element(w.witness);
  return out;
}

NilpotencyResult nilpotency_order(const FpAlgebra& a, const FpPoly& z, unsigned bound) {
  NilpotencyResult r;
  r.bound = bound;
  auto deg = a.degree(z);
  if (deg && *deg % 2) fail(ErrorCode::InvalidArgument, "nilpotency is tested on even-degree cocycles");
  if (!a.d(z).empty()) fail(ErrorCode::NotACocycle, "element is not a cocycle");
  FpPoly power = {{Mono{}, 1}};
  for (unsigned n = 1; n <= bound; ++n) {
    power = a.mul(power, z);
    FpWitness w = is_coboundary(a, power);
    if (w.exact) {
      r.nilpotent = true;
      r.order = n;
      r.witness = w.witness;
      // exact classes form an ideal: the next power must be exact as well
      if (!is_coboundary(a, a.mul(power, z)).exact)
        fail(ErrorCode::Internal, "z^n exact but z^(n+1) not exact");
      return r;
    }
  }
  return r;
}

NilpotencyResult nilpotency_order(const graded::FreeCGDA& a, const graded::Element& z, fp::u32 l, unsigned bound) {
  FpAlgebra fa = FpAlgebra::from(a, l);
  return nilpotency_order(fa, fa.from_element(z), bound);
}

namespace {

std::vector<fp::SparseVec> to_fp(const qq::QMatrix& m, fp::u32 p, const coeff::RingTag& tag) {
  std::vector<fp::SparseVec> out;
  for (const auto& col : m.columns) {
    fp::SparseVec v;
    for (const auto& [i, a] : col) {
      fp::u32 r;
      if (tag.is_prime_field() && tag.param != p)
        fail(ErrorCode::TagMismatch, "complex over " + tag.to_string() + " reduced modulo " + std::to_string(p));
      r = static_cast<fp::u32>(coeff::residue_of(a, p));
      if (r) v.emplace_back(i, r);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<ModuleCohomology> complex_cohomology(const graded::FilteredComplex& c, std::optional<fp::u32> field) {
  std::optional<fp::u32> p = field;
  if (!p && c.tag.is_prime_field()) p = static_cast<fp::u32>(c.tag.param);
  const int top = c.top();
  std::vector<ModuleCohomology> out(top + 1);
  std::vector<std::size_t> rk(top + 2, 0);
  std::vector<std::vector<coeff::Rational>> tors(top + 2);
  for (int n = 0; n <= top; ++n) {
    const auto m = c.diff(n);
    if (p) {
      rk[n + 1] = fp::rank(to_fp(m, *p, c.tag), c.dim(n + 1), *p);
    } else {
      auto red = qq::reduce(m, c.tag);
      rk[n + 1] = red.rank;
      tors[n + 1] = red.torsion;
    }
  }
  for (int n = 0; n <= top; ++n) {
    out[n].rank = c.dim(n) - rk[n + 1] - rk[n];
    out[n].torsion = tors[n];
  }
  return out;
}

namespace {

// rank of H^n(f) over F_p: dim(f(Z_V) + B_W) - dim B_W
std::size_t induced_rank(const graded::FilteredComplex& v, const graded::FilteredComplex& w, const graded::CochainMap& f,
                         int n, fp::u32 p) {
  auto zv = fp::nullspace(to_fp(v.diff(n), p, v.tag), v.dim(n + 1), p);
  fp::Echelon e(p, w.dim(n));
  for (const auto& b : to_fp(w.diff(n - 1), p, w.tag)) e.insert(b);
  std::size_t base = e.rank();
  auto fn = to_fp(f.at(n, w.dim(n), v.dim(n)), p, v.tag);
  fp::Field fld{p};
  for (const auto& z : zv) {
    fp::SparseVec img;
    for (const auto& [j, c] : z) fp::axpy(img, c, fn[j], fld);
    e.insert(img);
  }
  return e.rank() - base;
}

}  // namespace

QuasiIsoVerdict quasi_iso_check(const graded::FilteredComplex& v, const graded::FilteredComplex& w,
                                const graded::CochainMap& f, std::optional<fp::u32> field, int max_degree) {
  graded::check_cochain_map(v, w, f);
  QuasiIsoVerdict out;
  const int upto = max_degree + 1;
  std::optional<fp::u32> p = field;
  if (!p && v.tag.is_prime_field()) p = static_cast<fp::u32>(v.tag.param);
  out.source = complex_cohomology(v, p);
  out.target = complex_cohomology(w, p);
  auto h = [](const std::vector<ModuleCohomology>& hs, int n) { return n < static_cast<int>(hs.size()) ? hs[n] : ModuleCohomology{}; };
  if (p) {
    out.method = "ranks over F_" + std::to_string(*p);
    for (int n = 0; n <= upto; ++n) {
      std::size_t r = induced_rank(v, w, f, n, *p);
      bool inj = r == h(out.source, n).rank;
      bool sur = r == h(out.target, n).rank;
      out.injective.push_back(inj);
      out.iso.push_back(inj && sur);
    }
  } else {
    out.method = "mapping cone over " + v.tag.to_string();
    out.cone = complex_cohomology(graded::mapping_cone(v, w, f));
    for (int n = 0; n <= upto; ++n) {
      bool zero_n = h(out.cone, n).is_zero(), zero_n1 = h(out.cone, n + 1).is_zero();
      out.injective.push_back(zero_n);
      out.iso.push_back(zero_n && zero_n1);
    }
  }
  out.t_equivalence = true;
  for (int n = 0; n <= max_degree; ++n) out.t_equivalence = out.t_equivalence && out.iso[n];
  out.t_equivalence = out.t_equivalence && out.injective[upto];
  return out;
}

}  // namespace tame::homology
