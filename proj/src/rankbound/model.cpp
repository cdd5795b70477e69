#include <algorithm>
#include <random>

#include "tame/rankbound.hpp"

namespace tame::rankbound {

namespace {

bool in_base_ideal(const Mono& m, int r) {
  for (int i = 0; i < 2 * r; ++i)
    if (m[i]) return true;
  return false;
}

FpPoly normalized(std::vector<homology::FpTerm> terms, const fp::Field& f) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
  FpPoly out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = f.add(out.back().c, t.c);
      if (!out.back().c) out.pop_back();
    } else if (t.c) {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

SphereProduct::SphereProduct(std::vector<int> dims) {
  for (int n : dims)
    if (n < 1) fail(ErrorCode::InvalidArgument, "sphere dimensions must be >= 1");
  std::stable_partition(dims.begin(), dims.end(), [](int n) { return n % 2 == 0; });
  dims_ = std::move(dims);
  for (int n : dims_) {
    dim_ += n;
    if (n % 2 == 0) ++k_e_;
  }
}

bool SphereProduct::has_eta(int j) const {
  const int n = dims_.at(static_cast<std::size_t>(j - 1));
  return n % 2 == 0 && 2 * n - 1 <= dim_ + 1;
}

std::string SphereProduct::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < dims_.size(); ++i) s += (i ? "," : "") + std::to_string(dims_[i]);
  return s;
}

FpAlgebra model_layout(const SphereProduct& x, int r, fp::u32 p, std::vector<GenInfo>* info) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be >= 1");
  if (p == 2 || !coeff::is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be an odd prime");
  std::vector<homology::FpGen> gens;
  std::vector<GenInfo> kinds;
  for (int i = 1; i <= r; ++i) {
    gens.push_back({"t" + std::to_string(i), 2, 0});
    kinds.push_back({GenKind::T, i});
  }
  for (int i = 1; i <= r; ++i) {
    gens.push_back({"s" + std::to_string(i), 1, 0});
    kinds.push_back({GenKind::S, i});
  }
  for (int j = 1; j <= x.k(); ++j) {
    const int n = x.dims()[j - 1];
    const std::string js = std::to_string(j);
    if (n % 2 == 0) {
      gens.push_back({"tau" + js, n, 0});
      kinds.push_back({GenKind::Tau, j});
      if (x.has_eta(j)) {
        gens.push_back({"eta" + js, 2 * n - 1, 0});
        kinds.push_back({GenKind::Eta, j});
      }
    } else {
      gens.push_back({"sigma" + js, n, 0});
      kinds.push_back({GenKind::Sigma, j});
    }
  }
  if (gens.size() > homology::kMaxGens)
    fail(ErrorCode::InvalidArgument, "model needs " + std::to_string(gens.size()) + " generators, at most 32 supported");
  if (info) *info = kinds;
  return FpAlgebra(p, std::move(gens));
}

FpPoly m_differential(const FpAlgebra& layout, const std::vector<GenInfo>& info, std::size_t g) {
  if (info[g].kind != GenKind::Eta) return {};
  for (std::size_t h = 0; h < info.size(); ++h)
    if (info[h].kind == GenKind::Tau && info[h].index == info[g].index) return layout.monomial(layout.generator(h, 2));
  fail(ErrorCode::Internal, "eta without tau");
}

std::vector<std::size_t> ModelE::m_generators() const {
  std::vector<std::size_t> out;
  for (std::size_t g = 2 * static_cast<std::size_t>(r); g < info.size(); ++g) out.push_back(g);
  return out;
}

Twist ModelE::twist() const {
  Twist out;
  for (auto g : m_generators()) out[alg.gens()[g].name] = alg.differential(g);
  return out;
}

ModelE build_model(const SphereProduct& x, int r, fp::u32 p, const Twist& twist) {
  ModelE e;
  e.spheres = x;
  e.r = r;
  e.p = p;
  e.alg = model_layout(x, r, p, &e.info);
  for (const auto& [name, poly] : twist) {
    auto it = std::find_if(e.alg.gens().begin(), e.alg.gens().end(), [&](const auto& g) { return g.name == name; });
    if (it == e.alg.gens().end()) fail(ErrorCode::InvalidArgument, "twist names unknown generator '" + name + "'");
    if (e.info[static_cast<std::size_t>(it - e.alg.gens().begin())].kind <= GenKind::S)
      fail(ErrorCode::InvalidArgument, "d(" + name + ") is fixed to 0");
  }
  const auto& f = e.alg.field();
  for (auto g : e.m_generators()) {
    const auto& gen = e.alg.gens()[g];
    FpPoly dm = m_differential(e.alg, e.info, g);
    auto it = twist.find(gen.name);
    if (it == twist.end()) {
      e.alg.set_differential(g, dm);
      continue;
    }
    FpPoly dg = normalized(it->second, f);
    if (auto deg = e.alg.degree(dg); deg && *deg != gen.degree + 1)
      fail(ErrorCode::InvalidArgument, "d(" + gen.name + ") must have degree " + std::to_string(gen.degree + 1));
    FpPoly diff = dg;
    add_scaled(diff, f.neg(1), dm, f);
    for (const auto& t : diff)
      if (!in_base_ideal(t.m, r))
        fail(ErrorCode::TwistNotCongruentToM,
             "d(" + gen.name + ") - d_M(" + gen.name + ") has the term " + poly_string(e.alg, {t}) + " outside (t, s)");
    e.alg.set_differential(g, std::move(dg));
  }
  for (auto g : e.m_generators())
    if (!e.alg.d(e.alg.differential(g)).empty())
      fail(ErrorCode::DifferentialNotSquareZero, "d^2(" + e.alg.gens()[g].name + ") != 0");
  return e;
}

Twist diagonal_twist(const SphereProduct& x, int r, fp::u32 p) {
  std::vector<GenInfo> info;
  FpAlgebra a = model_layout(x, r, p, &info);
  Twist out;
  int i = 0;
  for (std::size_t g = 0; g < info.size(); ++g) {
    if (info[g].kind != GenKind::Sigma || i >= r) continue;
    const int n = a.gens()[g].degree;
    out[a.gens()[g].name] = a.monomial(a.generator(static_cast<std::size_t>(i), static_cast<std::uint8_t>((n + 1) / 2)));
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------

FpPoly ModelF::push(const FpPoly& e) const {
  std::vector<homology::FpTerm> out;
  for (const auto& t : e) {
    Mono m{};
    bool killed = false;
    for (std::size_t i = 0; i < from_e.size(); ++i) {
      if (!t.m[i]) continue;
      if (from_e[i] < 0) {
        killed = true;
        break;
      }
      m[static_cast<std::size_t>(from_e[i])] = t.m[i];
    }
    if (!killed) out.push_back({m, t.c});
  }
  return normalized(std::move(out), delta.field());
}

int ModelF::sigma_level(const Mono& m) const {
  int n = 0;
  for (std::size_t i = 0; i < info.size(); ++i)
    if (info[i].kind == GenKind::Sigma || info[i].kind == GenKind::Eta) n += m[i];
  return n;
}

FpPoly ModelF::sigma_component(const FpPoly& x, int level) const {
  FpPoly out;
  for (const auto& t : x)
    if (sigma_level(t.m) == level) out.push_back(t);
  return out;
}

FpPoly ModelF::pi(const FpPoly& x) const { return sigma_component(x, 0); }

ModelF quotient_F(const ModelE& e) {
  ModelF f;
  f.spheres = e.spheres;
  f.r = e.r;
  f.p = e.p;
  std::vector<homology::FpGen> gens;
  f.from_e.assign(e.info.size(), -1);
  for (std::size_t g = 0; g < e.info.size(); ++g) {
    if (e.info[g].kind == GenKind::S) continue;
    f.from_e[g] = static_cast<int>(gens.size());
    gens.push_back(e.alg.gens()[g]);
    f.info.push_back(e.info[g]);
    f.adjoined.push_back(false);
  }
  const std::size_t original = gens.size();
  f.df = FpAlgebra(e.p, gens);
  for (int j = 1; j <= e.spheres.k(); ++j) {
    const int n = e.spheres.dims()[j - 1];
    if (n % 2 != 0 || e.spheres.has_eta(j)) continue;
    gens.push_back({"eta" + std::to_string(j), 2 * n - 1, 0});
    f.info.push_back({GenKind::Eta, j});
    f.adjoined.push_back(true);
  }
  f.delta = FpAlgebra(e.p, gens);
  for (std::size_t g = 0; g < e.info.size(); ++g) {
    if (f.from_e[g] < 0) continue;
    const auto id = static_cast<std::size_t>(f.from_e[g]);
    FpPoly dfg = f.push(e.alg.differential(g));
    f.df.set_differential(id, dfg);
    const GenKind k = e.info[g].kind;
    if (k == GenKind::Sigma || k == GenKind::Eta) f.delta.set_differential(id, f.pi(dfg));
  }
  for (std::size_t g = original; g < gens.size(); ++g)
    f.delta.set_differential(g, m_differential(f.delta, f.info, g));
  for (std::size_t g = 0; g < original; ++g)
    if (!f.df.d(f.df.differential(g)).empty())
      fail(ErrorCode::Internal, "d_F^2(" + gens[g].name + ") != 0");
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!f.delta.d(f.delta.differential(g)).empty())
      fail(ErrorCode::DeformationNotSquareZero, "delta_F^2(" + gens[g].name + ") != 0");
  return f;
}

LemmaCheck check_lemma_easy(const ModelF& f, std::uint64_t seed, unsigned samples) {
  LemmaCheck out;
  const auto& fld = f.delta.field();
  // x is Sigma-homogeneous of level l.
  auto check = [&](const Mono& m) -> bool {
    const int l = f.sigma_level(m);
    FpPoly x = f.df.monomial(m);
    if (x.empty()) return true;
    FpPoly dx = f.delta.d(x);
    for (const auto& t : dx)
      if (f.sigma_level(t.m) != l - 1) {
        out.ok = false;
        out.counterexample = "delta_F(" + poly_string(f.df, x) + ") leaves Sigma^" + std::to_string(l - 1);
        return false;
      }
    FpPoly diff = dx;
    add_scaled(diff, fld.neg(1), f.df.d(x), fld);
    if (!f.pi(diff).empty()) {
      out.ok = false;
      out.counterexample = "(delta_F - d_F)(" + poly_string(f.df, x) + ") has a Sigma^0 component";
      return false;
    }
    return true;
  };
  const std::size_t n = f.original_size();
  for (std::size_t g = 0; g < n; ++g) {
    ++out.generators;
    if (!check(f.df.generator(g))) return out;
  }
  std::mt19937_64 rng(seed);
  const int top = f.spheres.dim();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> factors(1, 4);
  while (out.samples < samples && n > 0) {
    Mono m{}, tmp;
    const int k = factors(rng);
    int deg = 0;
    for (int i = 0; i < k; ++i) {
      Mono gmono = f.df.generator(pick(rng));
      if (f.df.mono_mul(m, gmono, tmp) == 0) continue;
      if (deg + f.df.degree(gmono) > top) continue;
      m = tmp;
      deg += f.df.degree(gmono);
    }
    ++out.samples;
    if (!check(m)) return out;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> property4_degrees(int dim_x, int truncation) {
  std::vector<int> out;
  for (int d : {dim_x + 1, dim_x + 2})
    if (d % 2 == 0 && d <= truncation) out.push_back(d);
  return out;
}

bool is_t_monomial(const Mono& m, int r) {
  for (std::size_t i = static_cast<std::size_t>(r); i < homology::kMaxGens; ++i)
    if (m[i]) return false;
  return true;
}

}  // namespace

Property4 property4_check(const ModelE& e, std::optional<int> truncation) {
  Property4 out;
  out.degrees = property4_degrees(e.spheres.dim(), truncation.value_or(e.truncation()));
  for (int deg : out.degrees) {
    const auto& basis = e.alg.basis(deg);
    fp::Echelon ech(e.p, basis.size(), true);
    for (const auto& col : e.alg.d_columns(deg - 1)) ech.insert(col);
    for (const auto& m : basis) {
      if (!is_t_monomial(m, e.r)) continue;
      ++out.checked;
      FpPoly target = e.alg.monomial(m);
      fp::SparseVec comb;
      if (!ech.reduce(e.alg.coords(target, deg), &comb).empty()) {
        out.failed = target;
        return out;
      }
      FpPoly w = e.alg.from_coords(comb, deg - 1);
      if (e.alg.d(w) != target) fail(ErrorCode::Internal, "coboundary witness does not verify");
      out.witnesses.push_back({std::move(target), std::move(w)});
    }
  }
  out.passed = true;
  return out;
}

bool property4_passes(const FpAlgebra& e, const SphereProduct& x, int r) {
  for (int deg : property4_degrees(x.dim(), x.dim() + 2)) {
    const auto& basis = e.basis(deg);
    std::vector<fp::SparseVec> targets;
    for (const auto& m : basis)
      if (is_t_monomial(m, r)) targets.push_back(e.coords(e.monomial(m), deg));
    fp::Echelon ech(e.p(), basis.size());
    for (const auto& col : e.d_columns(deg - 1)) ech.insert(col);
    for (const auto& t : targets)
      if (!ech.contains(t)) return false;
  }
  return true;
}

std::string poly_string(const FpAlgebra& a, const FpPoly& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& t : x) {
    if (!s.empty()) s += " + ";
    std::string mono;
    for (std::size_t i = 0; i < a.gens().size(); ++i) {
      if (!t.m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += a.gens()[i].name;
      if (t.m[i] > 1) mono += "^" + std::to_string(t.m[i]);
    }
    if (mono.empty())
      s += std::to_string(t.c);
    else if (t.c == 1)
      s += mono;
    else
      s += std::to_string(t.c) + "*" + mono;
  }
  return s;
}

}  // namespace tame::rankbound
