#pragma once

// Cohomology of degree-truncated free CGDAs and of filtered cochain
// complexes over F_l and Q_q: ranks, coboundary witnesses, nilpotency and
// quasi-isomorphism tests.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tame/fp.hpp"
#include "tame/graded.hpp"

namespace tame::homology {

constexpr std::size_t kMaxGens = 32;

// Exponent vector indexed by generator id.
using Mono = std::array<std::uint8_t, kMaxGens>;

struct MonoHash {
  std::size_t operator()(const Mono& m) const noexcept;
};

struct FpTerm {
  Mono m;
  fp::u32 c;
};
inline bool operator==(const FpTerm& x, const FpTerm& y) { return x.m == y.m && x.c == y.c; }
using FpPoly = std::vector<FpTerm>;  // sorted by monomial, nonzero coefficients

struct FpGen {
  std::string name;
  int degree = 1;
  int fdeg = 0;
  bool odd() const { return degree % 2 != 0; }
};

void add_scaled(FpPoly& y, fp::u32 a, const FpPoly& x, const fp::Field& f);

// A free CGDA over F_p held in a compact form for repeated elimination.
// Degree slices and differentials are cached; not safe for concurrent use.
class FpAlgebra {
 public:
  FpAlgebra(fp::u32 p, std::vector<FpGen> gens, std::optional<int> level = std::nullopt);
  // Reduces coefficients modulo l.
  static FpAlgebra from(const graded::FreeCGDA& a, fp::u32 l, std::optional<int> level = std::nullopt);

  fp::u32 p() const { return f_.p; }
  const fp::Field& field() const { return f_; }
  const std::vector<FpGen>& gens() const { return gens_; }
  std::optional<int> level() const { return level_; }

  void set_differential(std::size_t g, FpPoly dg);
  const FpPoly& differential(std::size_t g) const { return diff_[g]; }

  Mono generator(std::size_t g, std::uint8_t e = 1) const;
  FpPoly monomial(const Mono& m, fp::u32 c = 1) const;
  int degree(const Mono& m) const;
  int fdeg(const Mono& m) const;
  // 0 for an odd square, else the Koszul sign of a*b.
  int mono_mul(const Mono& a, const Mono& b, Mono& out) const;

  FpPoly mul(const FpPoly& a, const FpPoly& b) const;
  FpPoly pow(const FpPoly& a, unsigned n) const;
  FpPoly d(const FpPoly& x) const;
  const FpPoly& d(const Mono& m) const;
  std::optional<int> degree(const FpPoly& x) const;  // throws on mixed degrees

  const std::vector<Mono>& basis(int degree) const;
  std::optional<std::uint32_t> index(int degree, const Mono& m) const;
  fp::SparseVec coords(const FpPoly& x, int degree) const;
  FpPoly from_coords(const fp::SparseVec& v, int degree) const;
  // Columns of d: slice(degree) -> slice(degree + 1).
  std::vector<fp::SparseVec> d_columns(int degree) const;

  graded::Element to_element(const FpPoly& x) const;
  FpPoly from_element(const graded::Element& x) const;
  FpPoly parse_mono(const std::vector<std::pair<std::string, unsigned>>& factors) const;

 private:
  struct Slice {
    std::vector<Mono> basis;
    std::unordered_map<Mono, std::uint32_t, MonoHash> index;
  };
  const Slice& slice(int degree) const;

  fp::Field f_;
  std::vector<FpGen> gens_;
  std::optional<int> level_;
  std::vector<FpPoly> diff_;
  mutable std::unordered_map<int, Slice> slices_;
  mutable std::unordered_map<Mono, FpPoly, MonoHash> d_cache_;
};

struct CohomologyReport {
  fp::u32 field = 0;
  std::optional<int> level;
  int max_degree = 0;
  std::vector<std::size_t> dims;                  // exact for n <= max_degree
  std::vector<std::pair<std::size_t, std::size_t>> intervals;  // [lower, upper] per degree
  std::vector<std::size_t> slice_dims;            // chain dimensions 0..max_degree
  std::vector<std::vector<FpPoly>> representatives;
  std::string note;
};

CohomologyReport cohomology(const FpAlgebra& a, int max_degree, bool with_basis = false);
// level: filtration slice; with l <= level the slice tensored with F_l is zero.
CohomologyReport cohomology(const graded::FreeCGDA& a, std::optional<int> level, fp::u32 l, int max_degree,
                            bool with_basis = false);

struct FpWitness {
  bool exact = false;
  FpPoly witness;
};

// Requires x homogeneous and a cocycle (NotACocycle otherwise).
FpWitness is_coboundary(const FpAlgebra& a, const FpPoly& x);

struct CoboundaryWitness {
  bool exact = false;
  graded::Element target;
  graded::Element witness;
};

CoboundaryWitness is_coboundary(const graded::FreeCGDA& a, const graded::Element& x, fp::u32 l, int max_degree,
                                std::optional<int> level = std::nullopt);

struct NilpotencyResult {
  bool nilpotent = false;
  unsigned order = 0;   // least n with z^n exact
  unsigned bound = 0;
  FpPoly witness;       // d(witness) = z^order
};

NilpotencyResult nilpotency_order(const FpAlgebra& a, const FpPoly& z, unsigned bound);
NilpotencyResult nilpotency_order(const graded::FreeCGDA& a, const graded::Element& z, fp::u32 l, unsigned bound);

// Cohomology of a finite complex over F_l (entries reduced) or over its own
// ring (rank plus non-unit invariant factors).
struct ModuleCohomology {
  std::size_t rank = 0;
  std::vector<coeff::Rational> torsion;
  bool is_zero() const { return rank == 0 && torsion.empty(); }
};

std::vector<ModuleCohomology> complex_cohomology(const graded::FilteredComplex& c,
                                                 std::optional<fp::u32> field = std::nullopt);

struct QuasiIsoVerdict {
  std::vector<bool> iso, injective;  // per degree 0..N+1
  bool t_equivalence = false;        // iso through N and injective at N+1
  std::string method;
  std::vector<ModuleCohomology> source, target, cone;
};

QuasiIsoVerdict quasi_iso_check(const graded::FilteredComplex& v, const graded::FilteredComplex& w,
                                const graded::CochainMap& f, std::optional<fp::u32> field, int max_degree);

}  // namespace tame::homology
