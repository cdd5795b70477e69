#pragma once

// Rank bounds for free (Z/p)^r actions on products of spheres: the model
// E = F_p[t] (x) Lambda(s) (x) M, its quotient F = E/(s) with the deformed
// differential, nilpotency certificates, the ideal count, the search over
// twistings and the filtered tower that produces E.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tame/graded.hpp"
#include "tame/homology.hpp"

namespace tame::rankbound {

using homology::FpAlgebra;
using homology::FpPoly;
using homology::Mono;

class SphereProduct {
 public:
  SphereProduct() = default;
  // Reorders to even dimensions first, keeping the relative order.
  explicit SphereProduct(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int k() const { return static_cast<int>(dims_.size()); }
  int k_e() const { return k_e_; }
  int k_o() const { return k() - k_e_; }
  int dim() const { return dim_; }
  // eta_j exists in E for even n_j with 2 n_j - 1 <= dim X + 1.
  bool has_eta(int j) const;
  std::string to_string() const;  // "3,5"

 private:
  std::vector<int> dims_;
  int k_e_ = 0, dim_ = 0;
};

enum class GenKind { T, S, Tau, Sigma, Eta };

struct GenInfo {
  GenKind kind;
  int index;  // 1-based: i for t_i, s_i; sphere position j otherwise
};

using Twist = std::map<std::string, FpPoly>;  // generator name -> d(generator)

struct ModelE {
  SphereProduct spheres;
  int r = 0;
  fp::u32 p = 0;
  FpAlgebra alg{3, {}};
  std::vector<GenInfo> info;

  std::size_t t(int i) const { return static_cast<std::size_t>(i - 1); }
  std::size_t s(int i) const { return static_cast<std::size_t>(r + i - 1); }
  std::vector<std::size_t> m_generators() const;
  int truncation() const { return spheres.dim() + 2; }
  Twist twist() const;
};

// Generators t1..tr, s1..sr, then per sphere j: tau{j} and eta{j} or
// sigma{j}; every differential zero. Expressions for twists are read against
// this layout.
FpAlgebra model_layout(const SphereProduct& x, int r, fp::u32 p, std::vector<GenInfo>* info = nullptr);
// d_M(g): tau^2 for eta, else 0.
FpPoly m_differential(const FpAlgebra& layout, const std::vector<GenInfo>& info, std::size_t g);
// Missing generators get their d_M value.
ModelE build_model(const SphereProduct& x, int r, fp::u32 p, const Twist& twist = {});
// d(sigma) = t_i^((n+1)/2) on the i-th odd sphere for i <= r.
Twist diagonal_twist(const SphereProduct& x, int r, fp::u32 p);

struct ModelF {
  SphereProduct spheres;
  int r = 0;
  fp::u32 p = 0;
  FpAlgebra df{3, {}};     // F with d_F
  FpAlgebra delta{3, {}};  // F plus adjoined eta's, with delta_F
  std::vector<GenInfo> info;            // over delta's generators
  std::vector<bool> adjoined;
  std::vector<int> from_e;              // E id -> F id, -1 for s_i

  FpPoly push(const FpPoly& e) const;   // E -> F, s_i -> 0
  int sigma_level(const Mono& m) const; // number of odd M-generators
  FpPoly sigma_component(const FpPoly& x, int level) const;
  FpPoly pi(const FpPoly& x) const;     // odd M-generators -> 0
  std::size_t original_size() const { return df.gens().size(); }
};

ModelF quotient_F(const ModelE& e);

struct LemmaCheck {
  bool ok = true;
  std::size_t generators = 0, samples = 0;
  std::string counterexample;
};

LemmaCheck check_lemma_easy(const ModelF& f, std::uint64_t seed = 0, unsigned samples = 1000);

struct CoboundaryCert {
  FpPoly target;
  FpPoly witness;  // d(witness) = target
};

struct Property4 {
  bool passed = false;
  std::vector<int> degrees;
  std::size_t checked = 0;
  std::vector<CoboundaryCert> witnesses;
  std::optional<FpPoly> failed;
};

// Every t-monomial of degree dim X + 1 or dim X + 2 (up to truncation) is
// exact in E.
Property4 property4_check(const ModelE& e, std::optional<int> truncation = std::nullopt);
// Cheaper yes/no form used by the search.
bool property4_passes(const FpAlgebra& e, const SphereProduct& x, int r);

struct NilpotencyCert {
  std::size_t generator = 0;  // id in F (delta layout)
  std::string name;
  unsigned order = 0;         // delta(witness) = x^order
  FpPoly witness;
  std::string method;
};

struct GenialCert {
  std::vector<CoboundaryCert> monomials;  // in F: delta(c1) = m
  std::vector<NilpotencyCert> nilpotency;
};

GenialCert certify_genial(const ModelE& e, const ModelF& f, const Property4& p4);

struct IdealReport {
  std::vector<std::string> names;     // "delta(eta1)", ...
  std::vector<FpPoly> generators;     // in F
  std::vector<std::pair<std::string, unsigned>> exponents;  // least N with x^N in I
  std::size_t k = 0, needed = 0;
  bool finite = false;
  std::string bound;
};

IdealReport ideal_count(const ModelF& f, const GenialCert& cert);

struct RankVerdict {
  SphereProduct spheres;
  int r = 0;
  fp::u32 p = 0;
  Property4 property4;
  std::optional<LemmaCheck> lemma;
  std::optional<GenialCert> genial;
  std::optional<IdealReport> ideal;
  std::string bound;  // "k_o >= r", "refuted" or "contradiction: model inadmissible"
};

RankVerdict rank_pipeline(const ModelE& e);

// ---------------------------------------------------------------------------
// Search over the twisting space.

enum class Strategy { Exhaustive, Random };

struct SearchConfig {
  SphereProduct spheres;
  int r = 1;
  fp::u32 p = 3;
  Strategy strategy = Strategy::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t budget = 10'000'000;
  unsigned threads = 0;     // 0: hardware, capped by TAME_CGDA_THREADS
  bool tau_closed = false;  // force d(tau) = 0 exactly
};

struct SearchSummary {
  std::uint64_t points = 0, passing = 0, skipped = 0;
  std::size_t unknowns = 0;  // twist coefficients before reduction
  bool exhaustive = false;
  std::optional<Twist> first_passing;
  std::size_t generator_count = 0, generators_needed = 0;  // k, r + k_e
  std::string bound;
  bool contradiction = false;
  unsigned threads = 1;
};

SearchSummary oracle_search(const SearchConfig& cfg);
// The twist the random strategy draws for sample `index`; zero_y restricts
// to twists whose monomials avoid generators of the twisted degree.
std::optional<Twist> sample_twist(const SearchConfig& cfg, std::uint64_t index, bool zero_y = false);

unsigned worker_count(unsigned requested);

// ---------------------------------------------------------------------------
// Filtered tower over Z_(l).

struct ScheduledGenerator {
  std::string name;
  int degree = 1;
};

struct TowerStage {
  int degree = 0, fdeg = 0;
  std::vector<std::string> names;
};

struct TowerReport {
  SphereProduct spheres;
  int r = 0;
  fp::u32 l = 0;
  std::vector<TowerStage> stages;
  graded::FreeCGDA filtered;
  int level = 0;
  FpAlgebra reduced{3, {}};
  bool matches_model = false;
  std::string mismatch;
};

// Twistings are elements over Z_(l) keyed by generator name; omitted ones
// are 0, or tau^2 for eta.
TowerReport tower_build(const SphereProduct& x, int r, fp::u32 l,
                        const std::optional<std::vector<ScheduledGenerator>>& schedule = std::nullopt,
                        const std::map<std::string, graded::Element>& twist = {});

std::vector<ScheduledGenerator> automatic_schedule(const SphereProduct& x);

std::string poly_string(const FpAlgebra& a, const FpPoly& x);

}  // namespace tame::rankbound
