#pragma once

// Linear algebra over F_p with p < 2^31: sparse vectors, an incremental
// echelon form with optional combination tracking, dense rank, and affine
// solving.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tame::fp {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct Field {
  u32 p;
  u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p ? s - p : s; }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(static_cast<u64>(a) * b % p); }
  u32 inv(u32 a) const;
  u32 from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    return static_cast<u32>(r < 0 ? r + p : r);
  }
};

// Sorted by index, no zero values.
using SparseVec = std::vector<std::pair<u32, u32>>;

void axpy(SparseVec& y, u32 a, const SparseVec& x, const Field& f);  // y += a*x
u32 value_at(const SparseVec& v, u32 index);

class Echelon {
 public:
  Echelon(u32 p, std::size_t dim, bool track = false);

  // Adds v to the span; returns false if v was already in it.
  bool insert(const SparseVec& v);
  // Remainder of v after reduction. With tracking, *comb receives c with
  // v - remainder = sum_i c_i * (i-th inserted vector).
  SparseVec reduce(const SparseVec& v, SparseVec* comb = nullptr) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

 private:
  Field f_;
  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::vector<int> pivot_row_;  // index -> row or -1
  std::vector<SparseVec> rows_, combs_;
};

std::size_t dense_rank(std::vector<u32> a, std::size_t rows, std::size_t cols, u32 p);

// Rank of the matrix whose columns are given; dense below 2000 rows.
std::size_t rank(const std::vector<SparseVec>& columns, std::size_t rows, u32 p);

// Kernel of the matrix with the given columns, as vectors of length
// columns.size().
std::vector<SparseVec> nullspace(const std::vector<SparseVec>& columns, std::size_t rows, u32 p);

struct AffineSpace {
  std::vector<u32> particular;
  std::vector<std::vector<u32>> directions;
};

// Solves A x = b for dense row-major A (rows x cols); nullopt if inconsistent.
std::optional<AffineSpace> solve_affine(const std::vector<u32>& a, std::size_t rows, std::size_t cols,
                                        const std::vector<u32>& b, u32 p);

}  // namespace tame::fp
