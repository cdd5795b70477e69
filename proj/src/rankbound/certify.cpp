#include <algorithm>
#include <map>

#include "tame/rankbound.hpp"

namespace tame::rankbound {

namespace {

int t_degree(const Mono& m, int r) {
  int d = 0;
  for (int i = 0; i < r; ++i) d += 2 * m[i];
  return d;
}

std::vector<fp::u32> binomials(unsigned n, const fp::Field& f) {
  std::vector<fp::u32> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<fp::u32> next(i + 1, 1);
    for (unsigned k = 1; k < i; ++k) next[k] = f.add(row[k - 1], row[k]);
    row = std::move(next);
  }
  return row;
}

std::size_t find_generator(const ModelF& f, GenKind kind, int index) {
  for (std::size_t g = 0; g < f.info.size(); ++g)
    if (f.info[g].kind == kind && f.info[g].index == index) return g;
  fail(ErrorCode::Internal, "generator missing from F");
}

}  // namespace

GenialCert certify_genial(const ModelE& e, const ModelF& f, const Property4& p4) {
  if (!p4.passed) fail(ErrorCode::InvalidArgument, "property4 has no witnesses to certify");
  const FpAlgebra& a = f.delta;
  const auto& fld = a.field();
  GenialCert out;
  std::map<Mono, const FpPoly*> by_target;
  for (const auto& w : p4.witnesses) {
    FpPoly m = f.push(w.target);
    FpPoly c1 = f.sigma_component(f.push(w.witness), 1);
    if (a.d(c1) != m)
      fail(ErrorCode::CertificateFailure,
           "delta_F(c1) != " + poly_string(a, m) + " for the Sigma^1 part of " + poly_string(e.alg, w.witness));
    out.monomials.push_back({std::move(m), std::move(c1)});
  }
  for (const auto& c : out.monomials) by_target[c.target.front().m] = &c.witness;

  const int dim_x = e.spheres.dim();
  const int even = (dim_x + 1) % 2 == 0 ? dim_x + 1 : dim_x + 2;
  const unsigned kt = static_cast<unsigned>(even / 2);
  for (int i = 1; i <= e.r; ++i) {
    const std::size_t g = find_generator(f, GenKind::T, i);
    FpPoly z = a.monomial(a.generator(g));
    auto nil = homology::nilpotency_order(a, z, kt);
    if (!nil.nilpotent)
      fail(ErrorCode::CertificateFailure, "[" + a.gens()[g].name + "]^" + std::to_string(kt) + " is not exact");
    out.nilpotency.push_back({g, a.gens()[g].name, nil.order, nil.witness, "least exact power"});
  }

  // Split a polynomial in t, tau with t-degree >= `even` along certified
  // t-monomials: delta(c1(m') * rest) = m' * rest since delta(rest) = 0.
  auto lift = [&](const FpPoly& x) {
    FpPoly w;
    for (const auto& term : x) {
      Mono sub{}, rest = term.m;
      int need = even;
      for (int i = 0; i < e.r && need > 0; ++i) {
        const int take = std::min<int>(rest[i], need / 2);
        sub[i] = static_cast<std::uint8_t>(take);
        rest[i] = static_cast<std::uint8_t>(rest[i] - take);
        need -= 2 * take;
      }
      if (need > 0) fail(ErrorCode::CertificateFailure, "term of low t-degree in a controlled power");
      auto it = by_target.find(sub);
      if (it == by_target.end()) fail(ErrorCode::CertificateFailure, "t-monomial without certificate");
      add_scaled(w, term.c, a.mul(*it->second, a.monomial(rest)), fld);
    }
    return w;
  };

  const int k_odd = [&] {
    int n = 0;
    for (const auto& gi : f.info) n += gi.kind == GenKind::Sigma || gi.kind == GenKind::Eta;
    return n;
  }();
  for (int j = 1; j <= e.spheres.k(); ++j) {
    if (e.spheres.dims()[j - 1] % 2 != 0) continue;
    const std::size_t tau = find_generator(f, GenKind::Tau, j);
    const std::size_t eta = find_generator(f, GenKind::Eta, j);
    FpPoly tau2 = a.monomial(a.generator(tau, 2));
    FpPoly eta_p = a.monomial(a.generator(eta));
    if (f.adjoined[eta]) {
      if (a.d(eta_p) != tau2) fail(ErrorCode::CertificateFailure, "adjoined eta does not bound tau^2");
      out.nilpotency.push_back({tau, a.gens()[tau].name, 2, eta_p, "adjoined generator"});
      continue;
    }
    FpPoly b = a.differential(eta);
    FpPoly c = tau2;
    add_scaled(c, fld.neg(1), b, fld);
    for (const auto& t : c)
      if (f.sigma_level(t.m) != 0 || t_degree(t.m, e.r) == 0)
        fail(ErrorCode::CertificateFailure, "tau^2 - delta_F(eta) is not in (t) and Sigma^0");
    const auto n = static_cast<unsigned>(dim_x);
    FpPoly cn = a.pow(c, n);
    FpPoly c0 = f.pi(cn), cplus = cn;
    add_scaled(cplus, fld.neg(1), c0, fld);
    if (!cplus.empty() && !a.pow(cplus, static_cast<unsigned>(k_odd) + 1).empty())
      fail(ErrorCode::CertificateFailure, "Sigma^+ part is not nilpotent");
    if (!cplus.empty()) fail(ErrorCode::CertificateFailure, "controlled power has a Sigma^+ part");
    // (b + c)^n - c^n = delta(eta * sum_{k>=1} C(n,k) b^(k-1) c^(n-k))
    auto binom = binomials(n, fld);
    FpPoly sum;
    for (unsigned k = 1; k <= n; ++k) add_scaled(sum, binom[k], a.mul(a.pow(b, k - 1), a.pow(c, n - k)), fld);
    FpPoly w = a.mul(eta_p, sum);
    add_scaled(w, 1, lift(c0), fld);
    const unsigned order = 2 * n;
    if (a.d(w) != a.pow(a.monomial(a.generator(tau)), order))
      fail(ErrorCode::CertificateFailure, "tau" + std::to_string(j) + "^" + std::to_string(order) + " witness fails");
    out.nilpotency.push_back({tau, a.gens()[tau].name, order, std::move(w), "controlled power"});
  }
  return out;
}

IdealReport ideal_count(const ModelF& f, const GenialCert& cert) {
  IdealReport out;
  const FpAlgebra& a = f.delta;
  const auto& fld = a.field();
  // P = F_p[t, tau]
  std::vector<homology::FpGen> pg;
  std::vector<int> to_p(a.gens().size(), -1);
  for (std::size_t g = 0; g < a.gens().size(); ++g)
    if (f.info[g].kind == GenKind::T || f.info[g].kind == GenKind::Tau) {
      to_p[g] = static_cast<int>(pg.size());
      pg.push_back(a.gens()[g]);
    }
  FpAlgebra ring(f.p, pg);
  auto to_ring = [&](const FpPoly& x) {
    FpPoly out;
    for (const auto& t : x) {
      Mono m{};
      for (std::size_t g = 0; g < to_p.size(); ++g) {
        if (!t.m[g]) continue;
        if (to_p[g] < 0) fail(ErrorCode::Internal, "ideal generator outside F_p[t, tau]");
        m[static_cast<std::size_t>(to_p[g])] = t.m[g];
      }
      out.push_back({m, t.c});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.m < y.m; });
    return out;
  };

  std::vector<FpPoly> gens;
  for (int j = 1; j <= f.spheres.k(); ++j) {
    const bool even = f.spheres.dims()[j - 1] % 2 == 0;
    const GenKind k = even ? GenKind::Eta : GenKind::Sigma;
    const std::size_t g = find_generator(f, k, j);
    out.names.push_back("delta(" + a.gens()[g].name + ")");
    out.generators.push_back(a.differential(g));
    gens.push_back(to_ring(a.differential(g)));
  }
  out.k = gens.size();
  out.needed = static_cast<std::size_t>(f.r + f.spheres.k_e());

  std::map<int, fp::Echelon> slices;
  auto ideal_slice = [&](int deg) -> const fp::Echelon& {
    auto it = slices.find(deg);
    if (it != slices.end()) return it->second;
    fp::Echelon ech(f.p, ring.basis(deg).size());
    for (const auto& g : gens) {
      auto dg = ring.degree(g);
      if (!dg || *dg > deg) continue;
      for (const auto& mu : ring.basis(deg - *dg)) ech.insert(ring.coords(ring.mul(g, ring.monomial(mu)), deg));
    }
    return slices.emplace(deg, std::move(ech)).first->second;
  };

  std::vector<std::size_t> vars;
  for (std::size_t g = 0; g < pg.size(); ++g) vars.push_back(g);
  std::stable_sort(vars.begin(), vars.end(), [&](auto x, auto y) { return pg[x].degree < pg[y].degree; });
  const unsigned cap_base = static_cast<unsigned>(4 * f.spheres.dim());
  for (auto v : vars) {
    unsigned certified = 0;
    for (const auto& c : cert.nilpotency)
      if (c.name == pg[v].name) certified = c.order;
    const unsigned cap = std::max(cap_base, certified);
    const unsigned upper = certified ? certified : cap;
    auto member = [&](unsigned n) {
      const int deg = static_cast<int>(n) * pg[v].degree;
      return ideal_slice(deg).contains(ring.coords(ring.monomial(ring.generator(v, static_cast<std::uint8_t>(n))), deg));
    };
    if (upper > 255 || !member(upper))
      fail(ErrorCode::NotFiniteDimensional, pg[v].name + "^" + std::to_string(upper) + " is not in I");
    unsigned lo = 1, hi = upper;
    while (lo < hi) {
      const unsigned mid = (lo + hi) / 2;
      if (member(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    out.exponents.emplace_back(pg[v].name, lo);
  }
  (void)fld;
  out.finite = true;
  out.bound = out.k >= out.needed ? "k_o >= r" : "contradiction: model inadmissible";
  return out;
}

RankVerdict rank_pipeline(const ModelE& e) {
  RankVerdict v;
  v.spheres = e.spheres;
  v.r = e.r;
  v.p = e.p;
  v.property4 = property4_check(e);
  if (!v.property4.passed) {
    v.bound = "refuted";
    return v;
  }
  ModelF f = quotient_F(e);
  v.lemma = check_lemma_easy(f);
  if (!v.lemma->ok) fail(ErrorCode::CertificateFailure, "lemma check: " + v.lemma->counterexample);
  v.genial = certify_genial(e, f, v.property4);
  v.ideal = ideal_count(f, *v.genial);
  v.bound = v.ideal->bound;
  return v;
}

}  // namespace tame::rankbound
