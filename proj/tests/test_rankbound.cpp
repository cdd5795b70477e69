#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tame/io.hpp"
#include "tame/rankbound.hpp"
#include "verify.hpp"

using namespace tame;
using namespace tame::rankbound;

namespace {

std::vector<std::string> names(const FpAlgebra& a) {
  std::vector<std::string> out;
  for (const auto& g : a.gens()) out.push_back(g.name);
  return out;
}

FpPoly expr(const FpAlgebra& a, const std::string& s) { return io::to_fp(a, io::parse_polynomial(s)); }

std::size_t id(const FpAlgebra& a, const std::string& name) {
  for (std::size_t g = 0; g < a.gens().size(); ++g)
    if (a.gens()[g].name == name) return g;
  FAIL("no generator " << name);
  return 0;
}

// Random element of F (original generators only) in the given degree.
FpPoly random_element(const FpAlgebra& a, std::size_t gens, int degree, std::mt19937_64& rng) {
  FpPoly x;
  for (const auto& m : a.basis(degree)) {
    bool inside = true;
    for (std::size_t g = gens; g < a.gens().size(); ++g)
      if (m[g]) inside = false;
    if (inside && rng() % 3 == 0) add_scaled(x, 1 + rng() % (a.p() - 1), a.monomial(m), a.field());
  }
  return x;
}

// x in the ideal of P = F_p[t, tau] spanned by multiples of the generators.
bool in_ideal(const FpAlgebra& a, const ModelF& f, const std::vector<FpPoly>& gens, const FpPoly& x) {
  if (x.empty()) return true;
  const int deg = *a.degree(x);
  auto pure = [&](const Mono& m) {
    for (std::size_t g = 0; g < a.gens().size(); ++g)
      if (m[g] && f.info[g].kind != GenKind::T && f.info[g].kind != GenKind::Tau) return false;
    return true;
  };
  fp::Echelon e(a.p(), a.basis(deg).size());
  for (const auto& g : gens) {
    if (g.empty()) continue;
    const int gd = *a.degree(g);
    if (gd > deg) continue;
    for (const auto& m : a.basis(deg - gd))
      if (pure(m)) e.insert(a.coords(a.mul(g, a.monomial(m)), deg));
  }
  return e.contains(a.coords(x, deg));
}

}  // namespace

TEST_CASE("model layouts") {
  const auto s3 = build_model(SphereProduct({3}), 1, 11);
  CHECK(names(s3.alg) == std::vector<std::string>{"t1", "s1", "sigma1"});
  for (std::size_t g = 0; g < 3; ++g) CHECK(s3.alg.differential(g).empty());

  const auto s2 = build_model(SphereProduct({2}), 1, 7);
  CHECK(names(s2.alg) == std::vector<std::string>{"t1", "s1", "tau1", "eta1"});
  CHECK(s2.alg.differential(id(s2.alg, "eta1")) == expr(s2.alg, "tau1^2"));

  const auto s4 = build_model(SphereProduct({4}), 1, 7);
  CHECK(names(s4.alg) == std::vector<std::string>{"t1", "s1", "tau1"});

  const SphereProduct mixed({5, 2, 3});
  CHECK(mixed.dims() == std::vector<int>{2, 5, 3});
  CHECK(mixed.k_e() == 1);
  CHECK(mixed.k_o() == 2);
  CHECK(mixed.dim() == 10);
}

TEST_CASE("twist validation") {
  const SphereProduct x({3});
  const auto layout = model_layout(x, 1, 11);
  try {
    build_model(x, 1, 11, {{"sigma1", expr(layout, "t1")}});
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
  const SphereProduct y({2});
  const auto ly = model_layout(y, 1, 7);
  try {
    build_model(y, 1, 7, {{"eta1", expr(ly, "tau1^2 + 2*tau1^2")}});
    FAIL("expected TwistNotCongruentToM");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TwistNotCongruentToM);
  }
  const auto ok = build_model(x, 1, 11, {{"sigma1", expr(layout, "t1^2")}});
  CHECK(ok.alg.differential(2) == expr(ok.alg, "t1^2"));
}

TEST_CASE("setting t and s to zero recovers the M differential") {
  const SphereProduct x({2, 3});
  const auto layout = model_layout(x, 2, 13);
  auto e = build_model(x, 2, 13,
                       {{"eta1", expr(layout, "tau1^2 + t1*tau1 + 3*t2^2")}, {"sigma2", expr(layout, "t2^2 + t1*tau1")}});
  for (std::size_t g : e.m_generators()) {
    FpPoly dg;
    for (const auto& term : e.alg.differential(g)) {
      bool base = false;
      for (int i = 1; i <= e.r; ++i)
        if (term.m[e.t(i)] || term.m[e.s(i)]) base = true;
      if (!base) dg.push_back(term);
    }
    std::vector<GenInfo> info;
    const auto lay = model_layout(x, 2, 13, &info);
    CHECK(dg == m_differential(lay, info, g));
  }
}

TEST_CASE("quotient and deformed differential") {
  const SphereProduct x({3});
  const auto l3 = model_layout(x, 2, 11);
  const auto e = build_model(x, 2, 11, {{"sigma1", expr(l3, "t1*s1*s2")}});
  const auto f = quotient_F(e);
  CHECK(f.df.differential(id(f.df, "sigma1")).empty());
  CHECK(f.delta.differential(id(f.delta, "sigma1")).empty());

  const SphereProduct y({4, 5});
  const auto ly = model_layout(y, 1, 13);
  const auto e2 = build_model(y, 1, 13, {{"eta1", expr(ly, "tau1^2 + t1*s1*sigma2")}});
  const auto f2 = quotient_F(e2);
  CHECK(f2.delta.differential(id(f2.delta, "eta1")) == expr(f2.delta, "tau1^2"));
  CHECK(f2.delta.differential(id(f2.delta, "tau1")).empty());

  // push commutes with the differentials.
  std::mt19937_64 rng(41);
  for (int it = 0; it < 200; ++it) {
    const int deg = 1 + static_cast<int>(rng() % 6);
    FpPoly z;
    for (const auto& m : e2.alg.basis(deg))
      if (rng() % 3 == 0) add_scaled(z, 1 + rng() % 12, e2.alg.monomial(m), e2.alg.field());
    CHECK(f2.push(e2.alg.d(z)) == f2.df.d(f2.push(z)));
  }
  CHECK(check_lemma_easy(f2, 1, 1000).ok);
}

TEST_CASE("adjoined eta gives order-two nilpotency") {
  const auto e = build_model(SphereProduct({4}), 1, 7);
  const auto f = quotient_F(e);
  const auto tau = f.delta.monomial(f.delta.generator(id(f.delta, "tau1")));
  const auto nil = homology::nilpotency_order(f.delta, tau, 4);
  CHECK(nil.nilpotent);
  CHECK(nil.order == 2);
  CHECK_FALSE(homology::nilpotency_order(f.delta, f.delta.monomial(Mono{}), 6).nilpotent);
}

TEST_CASE("property4 examples") {
  const SphereProduct s3({3});
  const auto l = model_layout(s3, 1, 11);
  const auto e = build_model(s3, 1, 11, {{"sigma1", expr(l, "t1^2")}});
  const auto p4 = property4_check(e);
  CHECK(p4.passed);
  CHECK(p4.degrees == std::vector<int>{4});
  REQUIRE(!p4.witnesses.empty());
  CHECK(p4.witnesses[0].witness == expr(e.alg, "sigma1"));
  CHECK_FALSE(property4_check(build_model(s3, 2, 11, diagonal_twist(s3, 2, 11))).passed);
  CHECK_FALSE(property4_check(build_model(SphereProduct({2}), 1, 7)).passed);
}

TEST_CASE("pipeline and ideal count") {
  const SphereProduct s3({3});
  const auto l = model_layout(s3, 1, 11);
  const auto e = build_model(s3, 1, 11, {{"sigma1", expr(l, "t1^2")}});
  const auto v = rank_pipeline(e);
  CHECK(v.bound == "k_o >= r");
  REQUIRE(v.ideal);
  CHECK(v.ideal->k == 1);
  CHECK(v.ideal->needed == 1);
  CHECK(v.ideal->finite);
  CHECK(verify::verdict(e, v).empty());

  const SphereProduct x({3, 5});
  const auto e2 = build_model(x, 2, 29, diagonal_twist(x, 2, 29));
  const auto v2 = rank_pipeline(e2);
  CHECK(v2.bound == "k_o >= r");
  CHECK(verify::verdict(e2, v2).empty());
  CHECK(rank_pipeline(build_model(x, 3, 29, diagonal_twist(x, 3, 29))).bound == "refuted");
}

TEST_CASE("coboundaries of F project into the ideal") {
  const SphereProduct x({3, 5});
  const auto e = build_model(x, 2, 29, diagonal_twist(x, 2, 29));
  const auto f = quotient_F(e);
  const auto v = rank_pipeline(e);
  REQUIRE(v.ideal);
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int it = 0; it < 200; ++it) {
    const int deg = 1 + static_cast<int>(rng() % x.dim());
    const FpPoly z = random_element(f.delta, f.original_size(), deg, rng);
    const FpPoly dz = f.delta.d(z);
    if (dz.empty()) continue;
    CHECK(in_ideal(f.delta, f, v.ideal->generators, f.pi(dz)));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("coboundary refutations are stable under a larger truncation") {
  const SphereProduct x({3});
  const auto e = build_model(x, 2, 11, diagonal_twist(x, 2, 11));
  for (int n = 4; n <= 5; ++n) {
    const auto small = property4_check(e, n);
    const auto large = property4_check(e, n + 2);
    if (!small.passed && small.failed) {
      CHECK_FALSE(large.passed);
    }
  }
}

TEST_CASE("exhaustive search recovers small ranks") {
  SearchConfig c;
  c.spheres = SphereProduct({2});
  c.p = 7;
  const auto s2 = oracle_search(c);
  CHECK(s2.passing == 0);
  CHECK(s2.exhaustive);
  CHECK(s2.bound == "free rank 0");

  c.spheres = SphereProduct({3});
  c.p = 11;
  const auto s3 = oracle_search(c);
  CHECK(s3.passing > 0);
  CHECK(s3.bound == "k_o >= r");
  REQUIRE(s3.first_passing);
  const auto m = build_model(c.spheres, 1, 11, *s3.first_passing);
  CHECK(property4_check(m).passed);

  c.budget = 10;
  CHECK_THROWS_AS(oracle_search(c), Error);
}

TEST_CASE("search results do not depend on the thread count") {
  SearchConfig c;
  c.spheres = SphereProduct({3});
  c.p = 7;
  c.r = 2;
  c.threads = 1;
  const auto one = oracle_search(c);
  c.threads = 4;
  const auto four = oracle_search(c);
  CHECK(one.points == four.points);
  CHECK(one.passing == four.passing);
  CHECK(one.bound == four.bound);

  c.strategy = Strategy::Random;
  c.spheres = SphereProduct({3, 5});
  c.p = 29;
  c.r = 3;
  c.samples = 64;
  c.seed = 5;
  c.threads = 1;
  const auto r1 = oracle_search(c);
  c.threads = 3;
  const auto r3 = oracle_search(c);
  CHECK(io::dump(io::search_report(r1, c)) == io::dump(io::search_report(r3, c)));
  CHECK(r1.passing == 0);
  for (std::uint64_t i = 0; i < 5; ++i) {
    const auto a = sample_twist(c, i), b = sample_twist(c, i);
    CHECK(a == b);
  }
}

TEST_CASE("tower") {
  const auto t = tower_build(SphereProduct({3}), 1, 11);
  CHECK(t.level == 6);
  CHECK_MESSAGE(t.matches_model, t.mismatch);
  const auto pt = tower_build(SphereProduct(std::vector<int>{}), 2, 11);
  CHECK(pt.level == 1);
  CHECK(pt.matches_model);
  try {
    tower_build(SphereProduct({3}), 1, 5);
    FAIL("expected ScheduleDegreeTooTame");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ScheduleDegreeTooTame);
  }
}
