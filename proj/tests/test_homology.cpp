#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "oracle.hpp"
#include "tame/homology.hpp"

using namespace tame;
using namespace tame::homology;
using graded::Element;
using graded::FreeCGDA;
using graded::Generator;
using graded::Monomial;

namespace {

FreeCGDA algebra(coeff::RingTag tag, std::vector<Generator> gens, std::map<std::string, Element> d = {}) {
  std::vector<Element> diff(gens.size(), Element(tag));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto it = d.find(gens[i].name);
    if (it != d.end()) diff[i] = it->second;
  }
  return FreeCGDA(tag, std::move(gens), std::move(diff));
}

Element mono(coeff::RingTag tag, Monomial m, long c = 1) { return Element::term(m, coeff::Scalar::from_int(c, tag)); }

// All monomials of a degree, by brute force.
std::vector<Monomial> monomials(const FreeCGDA& a, int degree) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::uint32_t, int)> rec = [&](std::uint32_t i, int deg) {
    if (i == a.size()) {
      if (deg == degree) out.push_back(cur);
      return;
    }
    const auto& g = a.generators()[i];
    const int cap = g.odd() ? 1 : degree;
    for (int e = 0; e <= cap && deg + e * g.degree <= degree; ++e) {
      if (e) cur.push_back({i, static_cast<std::uint32_t>(e)});
      rec(i + 1, deg + e * g.degree);
      if (e) cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

std::size_t rank_mod(std::vector<std::vector<long>> a, long p) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] % p == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    long inv = 1;
    for (long x = 1; x < p; ++x)
      if ((((a[r][c] % p) + p) % p) * x % p == 1) inv = x;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r) continue;
      const long f = ((a[i][c] % p) + p) % p * inv % p;
      if (!f) continue;
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = ((a[i][k] - f * a[r][k]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Rank of d: degree n -> n+1 computed through Element arithmetic.
std::size_t d_rank(const FreeCGDA& a, int n, long p) {
  if (n < 0) return 0;
  const auto src = monomials(a, n), dst = monomials(a, n + 1);
  std::vector<std::vector<long>> m(dst.size(), std::vector<long>(src.size(), 0));
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Element dx = a.d(Element::term(src[j], coeff::Scalar::from_int(1, a.tag())));
    for (const auto& [mo, c] : dx.terms()) {
      const auto it = std::find(dst.begin(), dst.end(), mo);
      REQUIRE(it != dst.end());
      m[it - dst.begin()][j] = static_cast<long>(c.residue());
    }
  }
  return rank_mod(m, p);
}

std::vector<std::size_t> oracle_dims(const FreeCGDA& a, int top, long p) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= top; ++n) out.push_back(monomials(a, n).size() - d_rank(a, n, p) - d_rank(a, n - 1, p));
  return out;
}

}  // namespace

TEST_CASE("cohomology examples") {
  const auto f7 = coeff::RingTag::prime_field(7);
  auto sphere3 = algebra(f7, {{"sigma", 3, 0}});
  CHECK(cohomology(FpAlgebra::from(sphere3, 7), 6).dims == std::vector<std::size_t>{1, 0, 0, 1, 0, 0, 0});
  auto s2 = algebra(f7, {{"tau", 2, 0}, {"eta", 3, 0}}, {{"eta", mono(f7, {{0, 2}})}});
  CHECK(cohomology(FpAlgebra::from(s2, 7), 6).dims == std::vector<std::size_t>{1, 0, 1, 0, 0, 0, 0});
}

TEST_CASE("filtered slices and the invertible-l rule") {
  const auto z5 = coeff::RingTag::local_at(5);
  auto e0 = algebra(z5, {{"t", 2, 1}, {"s", 1, 1}}, {{"s", mono(z5, {{0, 1}}, 5)}});
  const auto r = cohomology(e0, 2, 5, 4);
  // Mod 5 the differential vanishes: the slice of filtration <= 2 has
  // 1, s, t, ts, t^2 (t^2 s has filtration 3).
  CHECK(r.dims == std::vector<std::size_t>{1, 1, 1, 1, 1});
  const auto z = cohomology(e0, 5, 5, 4);
  CHECK(z.dims == std::vector<std::size_t>(5, 0));
  CHECK_FALSE(z.note.empty());
}

TEST_CASE("coboundary witnesses") {
  const auto f7 = coeff::RingTag::prime_field(7);
  auto s2 = algebra(f7, {{"tau", 2, 0}, {"eta", 3, 0}}, {{"eta", mono(f7, {{0, 2}})}});
  auto w = is_coboundary(s2, s2.power(s2.gen("tau"), 2), 7, 6);
  REQUIRE(w.exact);
  CHECK(s2.d(w.witness) == w.target);
  CHECK(w.witness == s2.gen("eta"));
  auto zero = is_coboundary(s2, Element(f7), 7, 6);
  CHECK(zero.exact);
  CHECK(zero.witness.is_zero());

  const auto z11 = coeff::RingTag::local_at(11);
  auto e0 = algebra(z11, {{"t1", 2, 1}, {"s1", 1, 1}}, {{"s1", mono(z11, {{0, 1}}, 11)}});
  CHECK_FALSE(is_coboundary(e0, e0.gen("t1"), 11, 4).exact);
  CHECK_THROWS_AS(is_coboundary(s2, s2.gen("eta"), 7, 6), Error);
}

TEST_CASE("nilpotency") {
  const auto f7 = coeff::RingTag::prime_field(7);
  auto s2 = algebra(f7, {{"tau", 2, 0}, {"eta", 3, 0}}, {{"eta", mono(f7, {{0, 2}})}});
  const auto tau = nilpotency_order(s2, s2.gen("tau"), 7, 6);
  CHECK(tau.nilpotent);
  CHECK(tau.order == 2);
  CHECK_FALSE(nilpotency_order(s2, s2.one(), 7, 8).nilpotent);
  auto poly = algebra(f7, {{"t", 2, 0}});
  CHECK_FALSE(nilpotency_order(poly, poly.gen("t"), 7, 10).nilpotent);
  // Ideal property on every exact power.
  FpAlgebra fa = FpAlgebra::from(s2, 7);
  FpPoly p = fa.monomial(fa.generator(0));
  for (unsigned n = 2; n <= 5; ++n) CHECK(is_coboundary(fa, fa.pow(p, n)).exact);
}

TEST_CASE("cohomology against an independent elimination") {
  std::mt19937_64 rng(21);
  const long p = 5;
  const auto f5 = coeff::RingTag::prime_field(p);
  for (int it = 0; it < 25; ++it) {
    const long a = static_cast<long>(rng() % 5), b = static_cast<long>(rng() % 5), c = static_cast<long>(rng() % 5);
    // x, u in degrees 2, 1; d y = a x^2, d w = b x u, d z = c x^3.
    std::map<std::string, Element> d;
    if (a) d["y"] = mono(f5, {{0, 2}}, a);
    if (b) d["w"] = mono(f5, {{0, 1}, {1, 1}}, b);
    if (c) d["z"] = mono(f5, {{0, 3}}, c);
    auto alg = algebra(f5, {{"x", 2, 0}, {"u", 1, 0}, {"y", 3, 0}, {"w", 2, 0}, {"z", 5, 0}}, d);
    const int top = 7;
    const auto r = cohomology(FpAlgebra::from(alg, p), top, true);
    CHECK(r.dims == oracle_dims(alg, top, p));
    FpAlgebra fa = FpAlgebra::from(alg, p);
    for (int n = 0; n <= top; ++n) {
      REQUIRE(r.representatives[n].size() == r.dims[n]);
      for (const auto& z : r.representatives[n]) {
        CHECK(fa.d(z).empty());
        CHECK_FALSE(is_coboundary(fa, z).exact);
      }
    }
    // Witness validity on coboundaries of random elements.
    for (int n = 1; n < top; ++n) {
      const auto basis = fa.basis(n);
      if (basis.empty()) continue;
      FpPoly x;
      for (int k = 0; k < 3; ++k) add_scaled(x, 1 + rng() % 4, fa.monomial(basis[rng() % basis.size()]), fa.field());
      const FpPoly dx = fa.d(x);
      const auto w = is_coboundary(fa, dx);
      CHECK(w.exact);
      CHECK(fa.d(w.witness) == dx);
    }
  }
}

TEST_CASE("Euler characteristic of finite-dimensional algebras") {
  const auto f3 = coeff::RingTag::prime_field(3);
  // Heisenberg: d u3 = u1 u2.
  auto heis = algebra(f3, {{"u1", 1, 0}, {"u2", 1, 0}, {"u3", 1, 0}}, {{"u3", mono(f3, {{0, 1}, {1, 1}})}});
  auto sphere = algebra(f3, {{"a", 3, 0}, {"b", 5, 0}, {"c", 1, 0}});
  for (const auto* a : {&heis, &sphere}) {
    const auto r = cohomology(FpAlgebra::from(*a, 3), 10);
    long chi_h = 0, chi_c = 0;
    for (int n = 0; n <= 10; ++n) {
      chi_h += (n % 2 ? -1 : 1) * static_cast<long>(r.dims[n]);
      chi_c += (n % 2 ? -1 : 1) * static_cast<long>(r.slice_dims[n]);
    }
    CHECK(chi_h == chi_c);
  }
  CHECK(cohomology(FpAlgebra::from(heis, 3), 3).dims == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("complex cohomology and quasi-isomorphisms") {
  // 0 -> Q^2 --(2 0; 0 3)--> Q^2 over Q_2: H^1 has torsion 3.
  graded::FilteredComplex c;
  c.tag = coeff::RingTag::localized_up_to(2);
  c.fdeg = {{0, 0}, {0, 0}};
  oracle::Dense d = oracle::zeros(2, 2);
  d[0][0] = 2;
  d[1][1] = 3;
  c.d = {oracle::to_qmatrix(d, 2, 2), qq::QMatrix(0, 2)};
  const auto h = complex_cohomology(c);
  CHECK(h[0].is_zero());
  CHECK(h[1].rank == 0);
  REQUIRE(h[1].torsion.size() == 1);
  CHECK(h[1].torsion[0] == 3);
  const auto h3 = complex_cohomology(c, 3u);
  CHECK(h3[0].rank == 1);
  CHECK(h3[1].rank == 1);

  graded::CochainMap id;
  id.f = {oracle::to_qmatrix(oracle::identity(2), 2, 2), oracle::to_qmatrix(oracle::identity(2), 2, 2)};
  const auto v = quasi_iso_check(c, c, id, std::nullopt, 1);
  CHECK(v.t_equivalence);
  for (bool b : v.iso) CHECK(b);
}
