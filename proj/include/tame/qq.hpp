#pragma once

// Sparse exact linear algebra over the localized rings: rank, invariant
// factors and saturated kernels. Elimination pivots on units of the ring and
// hands any remaining block to the dense Smith normal form.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tame/coeff.hpp"

namespace tame::qq {

using coeff::Rational;
using coeff::RingTag;

using QVec = std::vector<std::pair<std::uint32_t, Rational>>;  // sorted, nonzero

struct QMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<QVec> columns;  // columns.size() == cols

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}
  QVec apply(const QVec& x) const;
  QMatrix operator*(const QMatrix& o) const;
  bool is_zero() const;
};

void axpy(QVec& y, const Rational& a, const QVec& x);
Rational value_at(const QVec& v, std::uint32_t index);

bool is_unit(const Rational& x, const RingTag& tag);

struct Reduction {
  std::size_t rank = 0;
  std::vector<Rational> torsion;  // non-unit nonzero invariant factors, canonical associates
};

Reduction reduce(const QMatrix& m, const RingTag& tag);
std::size_t rank(const QMatrix& m);

struct Kernel {
  std::vector<QVec> basis;
  // When set, basis[i] is 1 at free[i] and 0 at every other free position,
  // so coordinates of a kernel element are read off at free positions.
  bool unit_positions = true;
  std::vector<std::uint32_t> free;
};

Kernel kernel(const QMatrix& m, const RingTag& tag);

// Coordinates of v in the span of a kernel basis; nullopt if v is outside it.
std::optional<std::vector<Rational>> coordinates(const Kernel& k, const QVec& v);

// Reduction modulo a prime l of every entry.
std::vector<std::pair<std::uint32_t, std::uint32_t>> reduce_mod(const QVec& v, std::uint64_t l);

}  // namespace tame::qq
