#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tame/coeff.hpp"
#include "tame/fp.hpp"
#include "tame/qq.hpp"

using namespace tame;
using namespace tame::coeff;

namespace {

// Determinant over Q by elimination; test-side oracle.
Rational det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

std::vector<std::vector<Rational>> to_q(const Matrix& m) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).rational();
  return out;
}

// l-adic valuation of a nonzero integer.
int val(Integer x, unsigned long l) {
  int v = 0;
  if (x < 0) x = -x;
  while (x != 0 && x % l == 0) {
    x /= l;
    ++v;
  }
  return v;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Minimum l-valuation over the k x k minors of an integer matrix; -1 if all
// minors vanish. Over Z_(l) the product of the first k invariant factors
// has exactly this valuation.
int minor_valuation(const std::vector<std::vector<Rational>>& a, std::size_t k, unsigned long l) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(a.size(), k, 0, cur, rs);
  subsets(a[0].size(), k, 0, cur, cs);
  int best = -1;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
      const Rational d = det(m);
      if (d == 0) continue;
      const int v = val(d.get_num(), l);
      if (best < 0 || v < best) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("ring membership") {
  CHECK(in_ring(Rational(1, 2), RingTag::localized_up_to(2)));
  CHECK_FALSE(in_ring(Rational(1, 5), RingTag::localized_up_to(3)));
  CHECK(in_ring(Rational(1, 6), RingTag::local_at(5)));
  CHECK_FALSE(in_ring(Rational(1, 10), RingTag::local_at(5)));
  CHECK(RingTag::localized_up_to(0) == RingTag::localized_up_to(1));
  CHECK_THROWS_AS(RingTag::local_at(6), Error);
}

TEST_CASE("residues") {
  CHECK(residue_of(Rational(1, 2), 5) == 3);
  CHECK(residue_of(Rational(0), 7) == 0);
  CHECK(residue_of(Rational(10, 3), 7) == 1);
  CHECK(residue_of(Rational(-1), 7) == 6);
  try {
    residue_of(Rational(1, 7), 7);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonInvertibleDenominator);
  }
}

TEST_CASE("scalar arithmetic stays in the ring") {
  std::mt19937_64 rng(1);
  const std::vector<RingTag> tags = {RingTag::localized_up_to(3), RingTag::local_at(5), RingTag::prime_field(7),
                                     RingTag::rationals()};
  for (const auto& tag : tags) {
    for (int it = 0; it < 300; ++it) {
      auto rnd = [&] {
        const long n = static_cast<long>(rng() % 41) - 20;
        long d = 1;
        if (tag.kind == RingKind::LocalizedUpTo) d = std::vector<long>{1, 2, 3, 4, 6, 9}[rng() % 6];
        if (tag.kind == RingKind::LocalAt) d = std::vector<long>{1, 2, 3, 7, 11}[rng() % 5];
        if (tag.kind == RingKind::Rationals) d = static_cast<long>(rng() % 9) + 1;
        return Scalar::from_rational(Rational(n, d), tag);
      };
      const Scalar a = rnd(), b = rnd();
      for (const Scalar& c : {a + b, a - b, a * b, -a}) {
        if (tag.is_prime_field())
          CHECK(c.residue() < 7);
        else
          CHECK(in_ring(c.rational(), tag));
      }
      if (a.is_unit()) CHECK((a * a.inverse()).is_one());
    }
  }
  CHECK_THROWS_AS(Scalar::from_rational(Rational(1, 5), RingTag::localized_up_to(3)), Error);
  CHECK_THROWS_AS(Scalar::from_int(1, RingTag::rationals()) + Scalar::from_int(1, RingTag::local_at(3)), Error);
  CHECK_THROWS_AS(Scalar::from_int(3, RingTag::local_at(3)).inverse(), Error);
}

TEST_CASE("reduction mod l is a ring map") {
  std::mt19937_64 rng(2);
  const auto tag = RingTag::local_at(5);
  for (int it = 0; it < 1000; ++it) {
    const Rational x(static_cast<long>(rng() % 201) - 100, std::vector<long>{1, 2, 3, 4, 7}[rng() % 5]);
    const Rational y(static_cast<long>(rng() % 201) - 100, std::vector<long>{1, 3, 6, 9}[rng() % 4]);
    const Scalar a = Scalar::from_rational(x, tag), b = Scalar::from_rational(y, tag);
    CHECK(reduce_mod_l(a * b, 5) == reduce_mod_l(a, 5) * reduce_mod_l(b, 5));
    CHECK(reduce_mod_l(a + b, 5) == reduce_mod_l(a, 5) + reduce_mod_l(b, 5));
  }
}

TEST_CASE("Smith normal form examples") {
  const unsigned l = 7;
  const auto tag = RingTag::local_at(l);
  {
    const auto s = smith_normal_form(Matrix::from_ints({{7, 0, 0}, {0, 7, 0}, {0, 0, 7}}, tag));
    for (const auto& x : s.diagonal()) CHECK(x == Scalar::from_int(7, tag));
  }
  {
    const auto s = smith_normal_form(Matrix::identity(3, tag));
    CHECK(s.d == Matrix::identity(3, tag));
  }
  {
    const auto f = invariant_factors(Matrix::from_ints({{1, 0}, {0, 49}}, tag));
    REQUIRE(f.size() == 2);
    CHECK(f[0].is_one());
    CHECK(f[1] == Scalar::from_int(49, tag));
  }
  // Over Q_2 the factor 2 is a unit: diag(2, 3) has factors 1, 3.
  {
    const auto q2 = RingTag::localized_up_to(2);
    const auto f = invariant_factors(Matrix::from_ints({{2, 0}, {0, 3}}, q2));
    REQUIRE(f.size() == 2);
    CHECK(f[0].is_one());
    CHECK(f[1] == Scalar::from_int(3, q2));
  }
}

TEST_CASE("Smith normal form on random matrices") {
  std::mt19937_64 rng(3);
  const unsigned long l = 3;
  const auto tag = RingTag::local_at(l);
  for (int it = 0; it < 150; ++it) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows)
      for (auto& x : row) x = static_cast<long>(rng() % 19) - 9;
    const Matrix m = Matrix::from_ints(rows, tag);
    const SmithForm s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(in_ring(det(to_q(s.u)), tag));
    CHECK(Scalar::from_rational(det(to_q(s.u)), tag).is_unit());
    CHECK(Scalar::from_rational(det(to_q(s.v)), tag).is_unit());
    const auto diag = s.diagonal();
    for (std::size_t i = 0; i < s.d.rows(); ++i)
      for (std::size_t j = 0; j < s.d.cols(); ++j)
        if (i != j) CHECK(s.d.at(i, j).is_zero());
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
      if (!diag[i + 1].is_zero()) CHECK(divides(diag[i], diag[i + 1]));
    // Determinantal divisors as an independent oracle.
    const auto q = to_q(m);
    int prefix = 0;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      const int v = minor_valuation(q, k, l);
      if (v < 0) {
        CHECK(s.rank() < k);
        break;
      }
      CHECK(s.rank() >= k);
      prefix += val(diag[k - 1].rational().get_num(), l);
      CHECK(prefix == v);
    }
  }
}

TEST_CASE("sparse Q_q reduction agrees with dense Smith form") {
  std::mt19937_64 rng(4);
  const auto tag = RingTag::localized_up_to(2);
  for (int it = 0; it < 60; ++it) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    qq::QMatrix qm(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) rows[i][j] = (rng() % 3 == 0) ? static_cast<long>(rng() % 31) - 15 : 0;
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i)
        if (rows[i][j]) qm.columns[j].push_back({static_cast<std::uint32_t>(i), Rational(rows[i][j])});
    const auto red = qq::reduce(qm, tag);
    const auto f = invariant_factors(Matrix::from_ints(rows, tag));
    CHECK(red.rank == f.size());
    std::vector<Rational> torsion;
    for (const auto& x : f)
      if (!x.is_unit()) torsion.push_back(canonical_associate(x).rational());
    CHECK(red.torsion == torsion);
  }
}

TEST_CASE("F_p echelon and affine solve") {
  const fp::u32 p = 11;
  fp::Echelon e(p, 3, true);
  CHECK(e.insert({{0, 1}, {1, 2}}));
  CHECK(e.insert({{1, 1}, {2, 3}}));
  CHECK_FALSE(e.insert({{0, 2}, {1, 5}, {2, 3}}));
  fp::SparseVec comb;
  CHECK(e.reduce({{0, 3}, {1, 7}, {2, 3}}, &comb).empty());
  CHECK(comb == fp::SparseVec{{0, 3}, {1, 1}});
  // x + y = 1, x - y = 3 over F_11.
  const auto s = fp::solve_affine({1, 1, 1, 10}, 2, 2, {1, 3}, p);
  REQUIRE(s);
  CHECK(s->particular == std::vector<fp::u32>{2, 10});
  CHECK(s->directions.empty());
  CHECK_FALSE(fp::solve_affine({1, 1, 2, 2}, 2, 2, {1, 3}, p));
}
