#pragma once

// Polynomial forms on the cubical decomposition of the standard simplices,
// finite simplicial sets, compatible form families T^{*,q}(X), normalized
// simplicial cochains, the comparison zig-zag T(X) -> (T (x) C)(X) <- C(X),
// and the Massey product demonstration on the bar construction of Z/l.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tame/graded.hpp"
#include "tame/homology.hpp"
#include "tame/qq.hpp"

namespace tame::cenkl {

using coeff::Rational;
using qq::QVec;

// t_0^a_0 dt_0^e_0 ... t_n^a_n dt_n^e_n; bit i of eps is e_i.
struct FormMono {
  std::vector<std::uint8_t> alpha;
  std::uint32_t eps = 0;
  auto operator<=>(const FormMono&) const = default;
};

int form_degree(const FormMono& m);
int form_filtration(const FormMono& m);  // max_i (a_i + e_i)
bool in_ideal(const FormMono& m);        // every a_i + e_i > 0
std::string to_string(const FormMono& m);

// A form on Delta^n at filtration level q, kept in normal form: only
// monomials outside the ideal I, all of filtration at most q.
class CubicalForm {
 public:
  explicit CubicalForm(int n = 0, int level = 0);
  static CubicalForm one(int n, int level = 0);
  static CubicalForm t(int n, int i, unsigned power = 1, int level = -1);  // level defaults to power
  static CubicalForm dt(int n, int i, int level = 1);
  static CubicalForm monomial(int n, int level, const FormMono& m, const Rational& c = 1);

  int n() const { return n_; }
  int level() const { return level_; }
  const std::map<FormMono, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<int> degree() const;  // throws on mixed degrees

  // Drops monomials in I; FiltrationViolation above the level.
  void add(const FormMono& m, const Rational& c);
  CubicalForm with_level(int level) const;

  CubicalForm operator+(const CubicalForm& o) const;
  CubicalForm operator-(const CubicalForm& o) const;
  CubicalForm scaled(const Rational& c) const;
  friend bool operator==(const CubicalForm& a, const CubicalForm& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  std::string to_string() const;

 private:
  int n_, level_;
  std::map<FormMono, Rational> terms_;
};

CubicalForm form_d(const CubicalForm& w);
CubicalForm form_wedge(const CubicalForm& a, const CubicalForm& b);
// t_i := 1, dt_i := 0, t_j := t_{j-1} for j > i.
CubicalForm face_pullback(const CubicalForm& w, int i);
// t_i := t_i t_{i+1}, dt_i := t_{i+1} dt_i + t_i dt_{i+1}, t_j := t_{j+1} for j > i.
CubicalForm degeneracy_pullback(const CubicalForm& w, int i);

// Survivor monomials of degree p and filtration at most q on Delta^n, sorted.
std::vector<FormMono> cubical_basis(int n, int p, int q);

// ---------------------------------------------------------------------------
// Finite simplicial sets.

// theta^* of a nondegenerate simplex, theta: [dim] -> [base_dim] a monotone
// surjection. Unique by the Eilenberg-Zilber lemma.
struct Simplex {
  int base_dim = 0;
  std::uint32_t base = 0;
  std::vector<int> theta;
  int dim() const { return static_cast<int>(theta.size()) - 1; }
  bool nondegenerate() const { return dim() == base_dim; }
  auto operator<=>(const Simplex&) const = default;
};

struct FaceSpec {
  std::string target;
  std::vector<int> word;  // [w0..wk-1] denotes s_w0 ... s_wk-1 target
};

class SimplicialSetFin {
 public:
  SimplicialSetFin() = default;

  // Adds a nondegenerate n-simplex; n+1 faces for n >= 1, none for vertices.
  void add(const std::string& name, int n, const std::vector<FaceSpec>& faces = {});

  int dim() const { return static_cast<int>(names_.size()) - 1; }
  std::size_t count(int n) const { return n < 0 || n > dim() ? 0 : names_[n].size(); }
  const std::string& name(int n, std::uint32_t i) const { return names_.at(n).at(i); }
  std::optional<std::pair<int, std::uint32_t>> find(const std::string& name) const;

  Simplex simplex(int n, std::uint32_t i) const;
  Simplex face(const Simplex& s, int i) const;
  static Simplex degeneracy(const Simplex& s, int j);
  Simplex from_word(int n, std::uint32_t base, const std::vector<int>& word) const;
  // Face spanned by the given increasing vertex indices of s.
  Simplex sub_face(const Simplex& s, const std::vector<int>& vertices) const;
  std::string describe(const Simplex& s) const;

  // Simplicial identities d_i d_j = d_{j-1} d_i on every stored simplex.
  void validate() const;

 private:
  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<std::vector<Simplex>>> faces_;
  std::map<std::string, std::pair<int, std::uint32_t>> index_;
};

// "point", "interval", "circle", "boundary-2", "torus", "simplex:<n>",
// "bz-mod-l:<l>:<dim>".
SimplicialSetFin builtin_space(const std::string& name);
SimplicialSetFin standard_simplex(int n);
SimplicialSetFin bar_construction(unsigned l, int max_dim);

// Pulls a form back along the degeneracy operator of s: forms on
// Delta^{s.base_dim} to forms on Delta^{s.dim()}.
CubicalForm pullback(const CubicalForm& w, const std::vector<int>& theta);

// ---------------------------------------------------------------------------
// Simplicial cochain models A_n^p and their evaluation Mor(X, A^p).

class SimplicialModel {
 public:
  virtual ~SimplicialModel() = default;
  virtual std::size_t dim(int n, int p) const = 0;
  virtual int top_degree(int n) const = 0;
  virtual QVec face(int n, int p, int i, const QVec& v) const = 0;
  virtual QVec degeneracy(int n, int p, int j, const QVec& v) const = 0;
  virtual QVec d(int n, int p, const QVec& v) const = 0;
};

// T_n^{*,q} in the monomial basis of cubical_basis.
class CubicalModel : public SimplicialModel {
 public:
  explicit CubicalModel(int q) : q_(q) {}
  int level() const { return q_; }
  std::size_t dim(int n, int p) const override { return basis(n, p).size(); }
  int top_degree(int n) const override { return n; }
  QVec face(int n, int p, int i, const QVec& v) const override;
  QVec degeneracy(int n, int p, int j, const QVec& v) const override;
  QVec d(int n, int p, const QVec& v) const override;

  const std::vector<FormMono>& basis(int n, int p) const;
  QVec encode(const CubicalForm& w, int p) const;
  CubicalForm decode(int n, int p, const QVec& v) const;

 private:
  struct Block {
    std::vector<FormMono> basis;
    std::map<FormMono, std::uint32_t> index;
  };
  const Block& block(int n, int p) const;
  int q_;
  mutable std::map<std::pair<int, int>, Block> blocks_;
};

// Normalized cochains C^*(Delta[n]); basis: increasing (p+1)-subsets of [n]
// in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int size);

// T_n^{*,q} (x) C^*(Delta[n]); degree m is the sum over a + b = m of blocks
// (form index, subset index).
class TensorModel : public SimplicialModel {
 public:
  explicit TensorModel(int q) : t_(q) {}
  const CubicalModel& forms() const { return t_; }
  std::size_t dim(int n, int p) const override;
  int top_degree(int n) const override { return 2 * n; }
  QVec face(int n, int p, int i, const QVec& v) const override;
  QVec degeneracy(int n, int p, int j, const QVec& v) const override;
  QVec d(int n, int p, const QVec& v) const override;

  // Offset of the (a, p - a) block inside degree p.
  std::size_t offset(int n, int p, int a) const;
  std::uint32_t index(int n, int p, int a, std::uint32_t form, std::uint32_t subset) const;

 private:
  CubicalModel t_;
};

// Basis of Mor(X, A^p) inside the product of A_{dim x}^p over nondegenerate x.
struct MorSpace {
  int p = 0;
  std::vector<std::vector<std::size_t>> offset;  // offset[n][i] of simplex (n, i)
  std::size_t ambient = 0;
  qq::Kernel kernel;
  std::size_t dim() const { return kernel.basis.size(); }
};

MorSpace mor_space(const SimplicialSetFin& x, const SimplicialModel& a, int p, const coeff::RingTag& tag);

// Value of the family on a (possibly degenerate) simplex.
QVec evaluate(const SimplicialSetFin& x, const SimplicialModel& a, const MorSpace& s, const QVec& family,
              const Simplex& at);

// Cochain complex Mor(X, A^*) over the tag, all basis vectors at level fdeg.
struct MorComplex {
  graded::FilteredComplex complex;
  std::vector<MorSpace> spaces;
};

MorComplex mor_complex(const SimplicialSetFin& x, const SimplicialModel& a, const coeff::RingTag& tag, int fdeg);

// T^{p,q}(X).
MorSpace forms_on_space(const SimplicialSetFin& x, int p, int q);
// Per-simplex forms of a family.
std::vector<std::vector<CubicalForm>> family_forms(const SimplicialSetFin& x, const CubicalModel& t,
                                                   const MorSpace& s, const QVec& family);
// Inverse of family_forms; no compatibility check.
QVec family_vector(const CubicalModel& t, const MorSpace& s, const std::vector<std::vector<CubicalForm>>& forms);

// Normalized simplicial cochains of X over the tag.
graded::FilteredComplex cochain_complex(const SimplicialSetFin& x, const coeff::RingTag& tag, int fdeg);
// Cup product of cochains of degrees p and q, in the nondegenerate-simplex basis.
QVec cup(const SimplicialSetFin& x, int p, const QVec& a, int q, const QVec& b);

struct ZigzagReport {
  int q = 0;
  std::optional<std::uint64_t> field;
  int max_degree = 0;
  std::vector<homology::ModuleCohomology> forms, cochains, tensor;
  homology::QuasiIsoVerdict forms_leg, cochain_leg;
  std::vector<std::size_t> forms_dims, cochain_dims, tensor_dims;  // chain dimensions
  bool ok = false;  // both legs iso in degrees <= max_degree
};

// Builds T(X), C(X) and (T (x) C)(X) at level q and checks both legs.
ZigzagReport zigzag_compare(const SimplicialSetFin& x, int q, std::optional<std::uint64_t> field, int max_degree);

struct MultiplicativityReport {
  bool ok = true;
  std::size_t pairs = 0;
  std::string failure;
};

// For degree-1 cocycles a, b of C(X): with forms w_a (level q1), w_b (level
// q2) matched to them through (T (x) C)(X), checks that w_a w_b and a u b
// agree in H^2((T (x) C)^{*,q1+q2}(X)).
MultiplicativityReport check_multiplicativity(const SimplicialSetFin& x, int q1, int q2);

struct MasseyReport {
  unsigned l = 3;
  int skeleton = 3;
  std::size_t h1 = 0, h2 = 0;                 // dims over F_l
  bool square_exact = false;                  // u u = d(a_2)
  std::vector<QVec> defining_system;          // a_1 = u, a_2, ..., a_{l-1}
  QVec product;                               // the l-fold product cochain
  bool nonzero = false;                       // outside B^2 + u Z^1 + Z^1 u
  // The form side: T^{p,l}(X) (x) F_l = 0 because l is a unit of Q_l.
  std::size_t forms_rank = 0;                 // Q_l-rank of T^{1,l} on the 1-skeleton
  bool forms_vanish = false;
  std::string note;
};

MasseyReport massey_filtration_demo(unsigned l, int skeleton_dim);

}  // namespace tame::cenkl
