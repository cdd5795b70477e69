#pragma once

// Free filtered commutative graded differential algebras on named
// generators, filtered cochain complexes with their tensor products and
// mapping cones, elementary complexes, and the filtration function.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tame/coeff.hpp"
#include "tame/qq.hpp"

namespace tame::graded {

using coeff::RingTag;
using coeff::Scalar;

struct Generator {
  std::string name;
  int degree = 1;
  int fdeg = 0;
  bool odd() const { return degree % 2 != 0; }
};

// (generator id, exponent), ascending id. Odd generators have exponent 1.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

class Element {
 public:
  explicit Element(RingTag tag = RingTag::rationals()) : tag_(tag) {}
  static Element constant(const Scalar& c);
  static Element term(const Monomial& m, const Scalar& c);

  const RingTag& tag() const { return tag_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Scalar& c);
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element scaled(const Scalar& c) const;
  Element& operator+=(const Element& o);

  friend bool operator==(const Element& a, const Element& b) { return a.tag_ == b.tag_ && a.terms_ == b.terms_; }

 private:
  RingTag tag_;
  std::map<Monomial, Scalar> terms_;
};

class FreeCGDA {
 public:
  FreeCGDA() = default;
  // Validates names, degrees, filtration of the differential and d^2 = 0.
  FreeCGDA(RingTag tag, std::vector<Generator> gens, std::vector<Element> diff);

  const RingTag& tag() const { return tag_; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const Element& differential(std::uint32_t id) const { return diff_.at(id); }

  std::optional<std::uint32_t> find(const std::string& name) const;
  std::uint32_t id(const std::string& name) const;
  Element gen(const std::string& name) const;
  Element one() const;

  int degree(const Monomial& m) const;
  int fdeg(const Monomial& m) const;
  // Common degree of the terms; nullopt for zero; throws on mixed degrees.
  std::optional<int> degree(const Element& x) const;
  int fdeg(const Element& x) const;  // max over terms, 0 for zero

  Element multiply(const Element& a, const Element& b) const;
  Element power(const Element& a, unsigned n) const;
  Element d(const Element& x) const;

 private:
  Element d_monomial(const Monomial& m) const;
  RingTag tag_;
  std::vector<Generator> gens_;
  std::vector<Element> diff_;
};

// Koszul sign and product of two monomials; sign 0 when an odd square
// appears.
int monomial_product(const std::vector<Generator>& gens, const Monomial& a, const Monomial& b, Monomial& out);

Element multiply(const FreeCGDA& a, const Element& x, const Element& y);
Element extend_derivation(const FreeCGDA& a, const Element& x);

FreeCGDA tensor(const FreeCGDA& a, const FreeCGDA& b);

// Graded module with a linear differential, given on a basis.
struct DgModule {
  std::vector<Generator> basis;
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> d;
};

// B tensor Lambda V with d(v) = tau(v) + d_V(v).
FreeCGDA free_extension(const FreeCGDA& b, const DgModule& v, const std::vector<Element>& tau);

// Per-degree dimension of the span of monomials with exactly n factors,
// degrees 0..max_degree, filtration at most level when given.
std::vector<std::size_t> lambda_n_decomposition(const std::vector<Generator>& v, unsigned n, int max_degree,
                                                std::optional<int> level = std::nullopt);
std::vector<std::size_t> lambda_dimensions(const std::vector<Generator>& v, int max_degree,
                                           std::optional<int> level = std::nullopt);

// ---------------------------------------------------------------------------
// Filtered cochain complexes, degrees 0..top, finite dimensional.

struct FilteredComplex {
  RingTag tag;
  std::vector<std::vector<int>> fdeg;  // fdeg[n][i]: filtration degree of basis vector i in degree n
  std::vector<qq::QMatrix> d;          // d[n]: C^n -> C^{n+1}; the last one has no rows

  std::size_t dim(int n) const { return n < 0 || n >= static_cast<int>(fdeg.size()) ? 0 : fdeg[n].size(); }
  int top() const { return static_cast<int>(fdeg.size()) - 1; }
  // Differential out of degree n, an empty map outside the range.
  qq::QMatrix diff(int n) const;

  // Checks shapes, d o d = 0 and that d preserves filtration.
  void validate() const;
  // Subcomplex spanned by basis vectors of filtration at most q.
  FilteredComplex slice(int q) const;
};

// f[n]: V^n -> W^n.
struct CochainMap {
  std::vector<qq::QMatrix> f;
  qq::QMatrix at(int n, std::size_t rows, std::size_t cols) const;
};

void check_cochain_map(const FilteredComplex& v, const FilteredComplex& w, const CochainMap& f);

FilteredComplex tensor(const FilteredComplex& a, const FilteredComplex& b);
FilteredComplex tensor_filtrationwise(const FilteredComplex& a, const FilteredComplex& b);
// C^n = V^n + W^{n-1}, d(v, w) = (dv, f(v) - dw).
FilteredComplex mapping_cone(const FilteredComplex& v, const FilteredComplex& w, const CochainMap& f);
FilteredComplex suspension(const FilteredComplex& w);
FilteredComplex cone(const FilteredComplex& v);

struct ElementaryComplex {
  int p = 1, q = 1;
  coeff::Matrix eta;  // rank_p1 x rank_p over a PID tag

  // The cokernel of eta is torsion.
  void validate() const;
  FilteredComplex to_complex() const;
};

struct ModuleDecomposition {
  std::size_t free_rank = 0;
  std::vector<Scalar> torsion;  // non-unit invariant factors
};

ModuleDecomposition coker_dual(const ElementaryComplex& v);

// ---------------------------------------------------------------------------
// Filtration function.

int filtration_bar(int t);

struct AdmissibilityResult {
  bool ok = true;
  std::vector<int> parts;  // first counterexample
  int t = 0;
  std::uint64_t checked = 0;
};

// f[t-1] is the value at t, for t = 1..tmax.
AdmissibilityResult check_admissible(const std::vector<int>& f, int tmax);

struct OptimalityResult {
  bool ok = true;
  std::uint64_t tables = 0;     // admissible tables visited
  std::vector<int> counterexample;
};

// Enumerates every admissible table g: {1..tmax} -> N_+ with
// g(t) <= bar(t) + slack and checks g >= bar pointwise.
OptimalityResult verify_optimality(int tmax, int slack);

}  // namespace tame::graded
