#pragma once

// Exact scalars over the localized rings Q_q = Z[1/l : l <= q], the local
// rings Z_(l), the prime fields F_l and Q; dense matrices over them and the
// Smith normal form over the principal ideal domains among them.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tame/error.hpp"

namespace tame::coeff {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RingKind { LocalizedUpTo, LocalAt, PrimeField, Rationals };

struct RingTag {
  RingKind kind = RingKind::Rationals;
  std::uint64_t param = 0;  // q for LocalizedUpTo, l otherwise; unused for Rationals

  static RingTag localized_up_to(std::uint64_t q) { return {RingKind::LocalizedUpTo, q}; }
  static RingTag local_at(std::uint64_t l);
  static RingTag prime_field(std::uint64_t l);
  static RingTag rationals() { return {RingKind::Rationals, 0}; }

  bool is_field() const { return kind == RingKind::PrimeField || kind == RingKind::Rationals; }
  bool is_pid() const { return true; }
  bool is_prime_field() const { return kind == RingKind::PrimeField; }
  // Q_0 and Q_1 are both the integers.
  bool is_integers() const { return kind == RingKind::LocalizedUpTo && param <= 1; }

  std::string to_string() const;

  friend bool operator==(const RingTag& a, const RingTag& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == RingKind::Rationals) return true;
    if (a.kind == RingKind::LocalizedUpTo) return (a.param <= 1 && b.param <= 1) || a.param == b.param;
    return a.param == b.param;
  }
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Denominator condition of the tag; for PrimeField(l) this is "l does not
// divide the denominator".
bool in_ring(const Rational& x, const RingTag& tag);

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t residue_of(const Rational& x, std::uint64_t l);  // throws NonInvertibleDenominator

class Scalar {
 public:
  explicit Scalar(RingTag tag = RingTag::rationals());
  static Scalar from_rational(const Rational& x, RingTag tag);
  static Scalar from_int(long v, RingTag tag);
  static Scalar from_residue(std::uint64_t r, RingTag field_tag);
  static Scalar parse(const std::string& text, RingTag tag);  // "a/b" or "a"

  const RingTag& tag() const { return tag_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;

  // For PrimeField the canonical residue; otherwise the reduced fraction.
  Rational rational() const;
  std::uint64_t residue() const;  // PrimeField only

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;  // throws NotInRing when not a unit

  // Re-tags a value into a ring containing it (e.g. Q_2 into Q_5); throws
  // NotInRing otherwise.
  Scalar retag(RingTag tag) const;

  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  void require_same(const Scalar& o) const;
  RingTag tag_;
  std::variant<std::uint64_t, Rational> v_;
};

Scalar reduce_mod_l(const Scalar& x, std::uint64_t l);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, RingTag tag);
  static Matrix identity(std::size_t n, RingTag tag);
  static Matrix from_ints(const std::vector<std::vector<long>>& rows, RingTag tag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingTag& tag() const { return tag_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix transpose() const;
  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b);

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Scalar& c);  // row_dst += c*row_src
  void add_col_multiple(std::size_t dst, std::size_t src, const Scalar& c);
  void scale_row(std::size_t r, const Scalar& c);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  RingTag tag_;
  std::vector<Scalar> data_;
};

using LocalizedMatrix = Matrix;

// Euclidean structure of the tagged PID.
Integer euclidean_norm(const Scalar& x);          // 0 for x = 0
Scalar canonical_associate(const Scalar& x);      // positive, unit part removed
struct DivMod {
  Scalar quotient, remainder;
};
DivMod divmod(const Scalar& a, const Scalar& b);  // a = q*b + r, norm(r) < norm(b)
bool divides(const Scalar& b, const Scalar& a);

struct SmithForm {
  Matrix d, u, v;  // u * m * v == d
  std::vector<Scalar> diagonal() const;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const Matrix& m);
std::vector<Scalar> invariant_factors(const Matrix& m);  // nonzero diagonal of D

}  // namespace tame::coeff
