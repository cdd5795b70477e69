#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tame/cenkl.hpp"

using namespace tame;
using namespace tame::cenkl;

namespace {

// Counts monomials of degree p on Delta^n with every a_i + e_i <= q and some
// a_i + e_i = 0, by plain enumeration of exponent tuples.
std::size_t brute_count(int n, int p, int q) {
  const int vars = n + 1;
  std::size_t count = 0;
  std::vector<int> alpha(vars, 0);
  for (std::uint32_t eps = 0; eps < (1u << vars); ++eps) {
    if (std::popcount(eps) != p) continue;
    std::fill(alpha.begin(), alpha.end(), 0);
    while (true) {
      bool ok = true, zero = false;
      for (int i = 0; i < vars; ++i) {
        const int s = alpha[i] + static_cast<int>((eps >> i) & 1u);
        if (s > q) ok = false;
        if (s == 0) zero = true;
      }
      if (ok && zero) ++count;
      int i = 0;
      while (i < vars && alpha[i] == q) alpha[i++] = 0;
      if (i == vars) break;
      ++alpha[i];
    }
  }
  return count;
}

CubicalForm basis_form(int n, int level, const FormMono& m) { return CubicalForm::monomial(n, level, m); }

}  // namespace

TEST_CASE("basis dimensions match enumeration") {
  for (int n = 0; n <= 3; ++n)
    for (int q = 0; q <= 4; ++q)
      for (int p = 0; p <= n + 1; ++p) CHECK(cubical_basis(n, p, q).size() == brute_count(n, p, q));
}

TEST_CASE("d squares to zero on full bases") {
  for (int n = 0; n <= 3; ++n)
    for (int q = 1; q <= 4; ++q)
      for (int p = 0; p <= n; ++p)
        for (const auto& m : cubical_basis(n, p, q)) CHECK(form_d(form_d(basis_form(n, q, m))).is_zero());
}

TEST_CASE("form examples") {
  CHECK(form_d(CubicalForm::t(2, 0)) == CubicalForm::dt(2, 0));
  // d(t0^3) = 3 t0^2 dt0 at level 3.
  const auto d3 = form_d(CubicalForm::t(1, 0, 3));
  FormMono m{{2, 0}, 1u};
  CHECK(d3 == CubicalForm::monomial(1, 3, m, 3));
  // (t0 dt1)(t1 dt0) lies in the ideal on Delta^1.
  const auto a = form_wedge(CubicalForm::t(1, 0, 1), CubicalForm::dt(1, 1));
  const auto b = form_wedge(CubicalForm::t(1, 1, 1), CubicalForm::dt(1, 0));
  CHECK(form_wedge(a, b).is_zero());
  const auto w = CubicalForm::dt(2, 1);
  CHECK(form_wedge(CubicalForm::one(2), w) == w);
  CHECK(form_wedge(CubicalForm::dt(2, 0), CubicalForm::dt(2, 0)).is_zero());
  CHECK(face_pullback(CubicalForm::dt(1, 1), 1).is_zero());
  CHECK(face_pullback(CubicalForm::t(1, 1), 1) == CubicalForm::one(0));
  CHECK_THROWS_AS(CubicalForm::monomial(1, 1, FormMono{{2, 0}, 0u}), Error);
}

TEST_CASE("pullbacks commute with d and products") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 300; ++it) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int q1 = 1 + static_cast<int>(rng() % 2), q2 = 1 + static_cast<int>(rng() % 2);
    const int p1 = static_cast<int>(rng() % 2), p2 = static_cast<int>(rng() % 2);
    const auto b1 = cubical_basis(n, p1, q1), b2 = cubical_basis(n, p2, q2);
    if (b1.empty() || b2.empty()) continue;
    const auto x = basis_form(n, q1, b1[rng() % b1.size()]);
    const auto y = basis_form(n, q2, b2[rng() % b2.size()]);
    const int i = static_cast<int>(rng() % (n + 1));
    CHECK(face_pullback(form_d(x), i) == form_d(face_pullback(x, i)));
    CHECK(face_pullback(form_wedge(x, y), i) == form_wedge(face_pullback(x, i), face_pullback(y, i)));
    CHECK(form_wedge(x, y).level() == q1 + q2);
    const int j = static_cast<int>(rng() % (n + 1));
    CHECK(degeneracy_pullback(form_d(x), j) == form_d(degeneracy_pullback(x, j)));
    CHECK(degeneracy_pullback(form_wedge(x, y), j) ==
          form_wedge(degeneracy_pullback(x, j), degeneracy_pullback(y, j)));
  }
}

TEST_CASE("simplicial sets") {
  for (const char* name : {"point", "interval", "circle", "boundary-2", "torus", "simplex:3", "bz-mod-l:3:3"})
    CHECK_NOTHROW(builtin_space(name).validate());
  SimplicialSetFin bad;
  bad.add("a", 0);
  bad.add("b", 0);
  bad.add("e", 1, {{"a", {}}, {"b", {}}});
  bad.add("f", 1, {{"a", {}}, {"a", {}}});
  try {
    bad.add("x", 2, {{"e", {}}, {"f", {}}, {"e", {}}});
    bad.validate();
    FAIL("expected SimplicialIdentityViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SimplicialIdentityViolation);
  }
}

TEST_CASE("forms on spaces") {
  CHECK(forms_on_space(standard_simplex(0), 0, 1).dim() == 1);
  // Mor(Delta[1], T) is T_1 itself.
  CHECK(forms_on_space(standard_simplex(1), 1, 1).dim() == brute_count(1, 1, 1));
  CHECK(forms_on_space(standard_simplex(1), 1, 1).dim() == 2);
}

TEST_CASE("Poincare lemma") {
  for (int n = 0; n <= 2; ++n)
    for (int q = 1; q <= 4; ++q) {
      CubicalModel t(q);
      auto mc = mor_complex(standard_simplex(n), t, coeff::RingTag::localized_up_to(q), q);
      const auto h = homology::complex_cohomology(mc.complex);
      REQUIRE(!h.empty());
      CHECK(h[0].rank == 1);
      CHECK(h[0].torsion.empty());
      for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k].is_zero());
    }
}

TEST_CASE("zig-zag comparison") {
  for (int q = 1; q <= 3; ++q) {
    const auto r = zigzag_compare(standard_simplex(2), q, std::nullopt, 2);
    CHECK(r.ok);
    CHECK(r.forms[0].rank == 1);
    for (std::size_t k = 1; k < r.forms.size(); ++k) CHECK(r.forms[k].is_zero());
  }
  const auto circle = zigzag_compare(builtin_space("circle"), 2, 5, 2);
  CHECK(circle.ok);
  for (const auto* h : {&circle.forms, &circle.cochains, &circle.tensor}) {
    CHECK((*h)[0].rank == 1);
    CHECK((*h)[1].rank == 1);
  }
  const auto rational = zigzag_compare(builtin_space("circle"), 2, std::nullopt, 2);
  CHECK(rational.ok);
  CHECK(rational.forms[1].rank == 1);
  CHECK(rational.forms[1].torsion.empty());
  const auto boundary = zigzag_compare(builtin_space("boundary-2"), 2, std::nullopt, 2);
  CHECK(boundary.ok);
  for (std::size_t k = 0; k < boundary.forms.size(); ++k) {
    CHECK(boundary.forms[k].rank == rational.forms[k].rank);
    CHECK(boundary.cochains[k].rank == rational.cochains[k].rank);
  }
  CHECK_THROWS_AS(zigzag_compare(builtin_space("circle"), 5, 5, 2), Error);
}

TEST_CASE("multiplicativity of the comparison") {
  for (const char* name : {"circle", "torus"}) {
    const auto m = check_multiplicativity(builtin_space(name), 1, 2);
    CHECK_MESSAGE(m.ok, m.failure);
  }
  const auto torus = check_multiplicativity(builtin_space("torus"), 1, 1);
  CHECK(torus.ok);
  CHECK(torus.pairs > 0);
}

TEST_CASE("Massey product on the bar construction") {
  const auto r = massey_filtration_demo(3, 3);
  CHECK(r.h1 == 1);
  CHECK(r.square_exact);
  CHECK(r.nonzero);
  CHECK(r.forms_vanish);
  CHECK(r.defining_system.size() == 2);
}
