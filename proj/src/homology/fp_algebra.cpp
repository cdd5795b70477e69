#include <algorithm>
#include <cstring>
#include <functional>

#include "tame/homology.hpp"

namespace tame::homology {

std::size_t MonoHash::operator()(const Mono& m) const noexcept {
  std::uint64_t w[kMaxGens / 8];
  std::memcpy(w, m.data(), kMaxGens);
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (auto x : w) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

namespace {

bool mono_less(const Mono& a, const Mono& b) { return std::memcmp(a.data(), b.data(), kMaxGens) < 0; }

}  // namespace

void add_scaled(FpPoly& y, fp::u32 a, const FpPoly& x, const fp::Field& f) {
  if (a == 0 || x.empty()) return;
  FpPoly out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && mono_less(y[i].m, x[j].m))) {
      out.push_back(y[i++]);
    } else if (i == y.size() || mono_less(x[j].m, y[i].m)) {
      out.push_back({x[j].m, f.mul(a, x[j].c)});
      ++j;
    } else {
      fp::u32 v = f.add(y[i].c, f.mul(a, x[j].c));
      if (v) out.push_back({y[i].m, v});
      ++i;
      ++j;
    }
  }
  y.swap(out);
}

FpAlgebra::FpAlgebra(fp::u32 p, std::vector<FpGen> gens, std::optional<int> level)
    : f_{p}, gens_(std::move(gens)), level_(level), diff_(gens_.size()) {
  if (!coeff::is_prime(p) || p >= (1u << 31)) fail(ErrorCode::InvalidArgument, "F_p needs a prime p < 2^31");
  if (gens_.size() > kMaxGens) fail(ErrorCode::InvalidArgument, "at most 32 generators are supported");
  for (const auto& g : gens_)
    if (g.degree < 1) fail(ErrorCode::InvalidArgument, "generator '" + g.name + "' must have degree >= 1");
}

FpAlgebra FpAlgebra::from(const graded::FreeCGDA& a, fp::u32 l, std::optional<int> level) {
  std::vector<FpGen> gens;
  for (const auto& g : a.generators()) gens.push_back({g.name, g.degree, g.fdeg});
  FpAlgebra out(l, std::move(gens), level);
  for (std::size_t i = 0; i < a.size(); ++i)
    out.set_differential(i, out.from_element(a.differential(static_cast<std::uint32_t>(i))));
  return out;
}

void FpAlgebra::set_differential(std::size_t g, FpPoly dg) {
  diff_.at(g) = std::move(dg);
  d_cache_.clear();
}

Mono FpAlgebra::generator(std::size_t g, std::uint8_t e) const {
  Mono m{};
  m[g] = e;
  return m;
}

FpPoly FpAlgebra::monomial(const Mono& m, fp::u32 c) const {
  c %= f_.p;
  if (!c) return {};
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].odd() && m[i] > 1) return {};
  return {{m, c}};
}

int FpAlgebra::degree(const Mono& m) const {
  int s = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i) s += m[i] * gens_[i].degree;
  return s;
}

int FpAlgebra::fdeg(const Mono& m) const {
  int s = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i) s += m[i] * gens_[i].fdeg;
  return s;
}

int FpAlgebra::mono_mul(const Mono& a, const Mono& b, Mono& out) const {
  int swaps = 0, odd_in_a_after = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].odd() && a[i]) ++odd_in_a_after;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].odd()) {
      if (a[i]) --odd_in_a_after;
      if (b[i]) {
        if (a[i]) return 0;
        swaps += odd_in_a_after;
      }
    }
    unsigned e = a[i] + b[i];
    if (e > 255) fail(ErrorCode::InvalidArgument, "exponent overflow");
    out[i] = static_cast<std::uint8_t>(e);
  }
  for (std::size_t i = gens_.size(); i < kMaxGens; ++i) out[i] = 0;
  return swaps % 2 ? -1 : 1;
}

FpPoly FpAlgebra::mul(const FpPoly& a, const FpPoly& b) const {
  std::unordered_map<Mono, fp::u32, MonoHash> acc;
  Mono m;
  for (const auto& x : a)
    for (const auto& y : b) {
      int s = mono_mul(x.m, y.m, m);
      if (!s) continue;
      fp::u32 c = f_.mul(x.c, y.c);
      auto& slot = acc[m];
      slot = s > 0 ? f_.add(slot, c) : f_.sub(slot, c);
    }
  FpPoly out;
  for (const auto& [mm, c] : acc)
    if (c) out.push_back({mm, c});
  std::sort(out.begin(), out.end(), [](const FpTerm& x, const FpTerm& y) { return mono_less(x.m, y.m); });
  return out;
}

FpPoly FpAlgebra::pow(const FpPoly& a, unsigned n) const {
  FpPoly r = {{Mono{}, 1}};
  for (unsigned i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

const FpPoly& FpAlgebra::d(const Mono& m) const {
  auto it = d_cache_.find(m);
  if (it != d_cache_.end()) return it->second;
  FpPoly out;
  int prefix_degree = 0;
  Mono left{}, suffix = m, t1, t2;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (!m[i]) continue;
    suffix[i] = 0;
    const FpPoly& dg = diff_[i];
    if (!dg.empty()) {
      Mono l2 = left;
      l2[i] = static_cast<std::uint8_t>(m[i] - 1);
      fp::u32 e = m[i] % f_.p;
      fp::u32 base = prefix_degree % 2 ? f_.neg(e) : e;
      if (base) {
        FpPoly part;
        for (const auto& term : dg) {
          int s1 = mono_mul(l2, term.m, t1);
          if (!s1) continue;
          int s2 = mono_mul(t1, suffix, t2);
          if (!s2) continue;
          fp::u32 c = f_.mul(base, term.c);
          part.push_back({t2, s1 * s2 > 0 ? c : f_.neg(c)});
        }
        std::sort(part.begin(), part.end(), [](const FpTerm& x, const FpTerm& y) { return mono_less(x.m, y.m); });
        add_scaled(out, 1, part, f_);
      }
    }
    left[i] = m[i];
    prefix_degree += m[i] * gens_[i].degree;
  }
  return d_cache_.emplace(m, std::move(out)).first->second;
}

FpPoly FpAlgebra::d(const FpPoly& x) const {
  FpPoly out;
  for (const auto& t : x) add_scaled(out, t.c, d(t.m), f_);
  return out;
}

std::optional<int> FpAlgebra::degree(const FpPoly& x) const {
  std::optional<int> out;
  for (const auto& t : x) {
    int dm = degree(t.m);
    if (out && *out != dm) fail(ErrorCode::InvalidArgument, "element is not homogeneous");
    out = dm;
  }
  return out;
}

const FpAlgebra::Slice& FpAlgebra::slice(int deg) const {
  auto it = slices_.find(deg);
  if (it != slices_.end()) return it->second;
  Slice s;
  if (deg >= 0) {
    Mono cur{};
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int left, int fd) {
      if (i == gens_.size()) {
        if (left == 0) s.basis.push_back(cur);
        return;
      }
      const int gd = gens_[i].degree;
      const int emax = gens_[i].odd() ? std::min(1, left / gd) : left / gd;
      for (int e = 0; e <= emax; ++e) {
        int f2 = fd + e * gens_[i].fdeg;
        if (level_ && f2 > *level_) break;
        cur[i] = static_cast<std::uint8_t>(e);
        rec(i + 1, left - e * gd, f2);
      }
      cur[i] = 0;
    };
    rec(0, deg, 0);
    std::sort(s.basis.begin(), s.basis.end(), mono_less);
    for (std::size_t k = 0; k < s.basis.size(); ++k) s.index.emplace(s.basis[k], static_cast<std::uint32_t>(k));
  }
  return slices_.emplace(deg, std::move(s)).first->second;
}

const std::vector<Mono>& FpAlgebra::basis(int deg) const { return slice(deg).basis; }

std::optional<std::uint32_t> FpAlgebra::index(int deg, const Mono& m) const {
  const auto& s = slice(deg);
  auto it = s.index.find(m);
  if (it == s.index.end()) return std::nullopt;
  return it->second;
}

fp::SparseVec FpAlgebra::coords(const FpPoly& x, int deg) const {
  fp::SparseVec v;
  for (const auto& t : x) {
    auto i = index(deg, t.m);
    if (!i) fail(ErrorCode::Internal, "monomial outside the degree " + std::to_string(deg) + " slice");
    v.emplace_back(*i, t.c);
  }
  std::sort(v.begin(), v.end());
  return v;
}

FpPoly FpAlgebra::from_coords(const fp::SparseVec& v, int deg) const {
  const auto& b = basis(deg);
  FpPoly out;
  for (const auto& [i, c] : v) out.push_back({b[i], c});
  std::sort(out.begin(), out.end(), [](const FpTerm& x, const FpTerm& y) { return mono_less(x.m, y.m); });
  return out;
}

std::vector<fp::SparseVec> FpAlgebra::d_columns(int deg) const {
  std::vector<fp::SparseVec> cols;
  for (const auto& m : basis(deg)) cols.push_back(coords(d(m), deg + 1));
  return cols;
}

graded::Element FpAlgebra::to_element(const FpPoly& x) const {
  auto tag = coeff::RingTag::prime_field(f_.p);
  graded::Element e(tag);
  for (const auto& t : x) {
    graded::Monomial m;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (t.m[i]) m.emplace_back(static_cast<std::uint32_t>(i), t.m[i]);
    e.add_term(m, coeff::Scalar::from_residue(t.c, tag));
  }
  return e;
}

FpPoly FpAlgebra::from_element(const graded::Element& x) const {
  FpPoly out;
  for (const auto& [m, c] : x.terms()) {
    Mono mm{};
    for (const auto& [g, e] : m) {
      if (g >= gens_.size() || e > 255) fail(ErrorCode::InvalidArgument, "monomial outside the algebra");
      mm[g] = static_cast<std::uint8_t>(e);
    }
    fp::u32 r = c.tag().is_prime_field() ? static_cast<fp::u32>(coeff::reduce_mod_l(c, f_.p).residue())
                                         : static_cast<fp::u32>(coeff::residue_of(c.rational(), f_.p));
    add_scaled(out, 1, monomial(mm, r), f_);
  }
  return out;
}

FpPoly FpAlgebra::parse_mono(const std::vector<std::pair<std::string, unsigned>>& factors) const {
  Mono m{};
  for (const auto& [name, e] : factors) {
    auto it = std::find_if(gens_.begin(), gens_.end(), [&](const FpGen& g) { return g.name == name; });
    if (it == gens_.end()) fail(ErrorCode::InvalidArgument, "unknown generator '" + name + "'");
    m[it - gens_.begin()] = static_cast<std::uint8_t>(m[it - gens_.begin()] + e);
  }
  return monomial(m);
}

}  // namespace tame::homology
