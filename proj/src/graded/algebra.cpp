#include <set>

#include "tame/graded.hpp"

namespace tame::graded {

Element Element::constant(const Scalar& c) {
  Element e(c.tag());
  e.add_term({}, c);
  return e;
}

Element Element::term(const Monomial& m, const Scalar& c) {
  Element e(c.tag());
  e.add_term(m, c);
  return e;
}

Scalar Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(tag_) : it->second;
}

void Element::add_term(const Monomial& m, const Scalar& c) {
  if (!(c.tag() == tag_)) fail(ErrorCode::TagMismatch, "term over " + c.tag().to_string() + " in element over " + tag_.to_string());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Element& Element::operator+=(const Element& o) {
  if (!(o.tag_ == tag_)) fail(ErrorCode::TagMismatch, "adding elements over different rings");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element Element::operator+(const Element& o) const {
  Element r = *this;
  r += o;
  return r;
}

Element Element::operator-() const {
  Element r(tag_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::scaled(const Scalar& c) const {
  Element r(tag_);
  for (const auto& [m, a] : terms_) r.add_term(m, a * c);
  return r;
}

int monomial_product(const std::vector<Generator>& gens, const Monomial& a, const Monomial& b, Monomial& out) {
  out.clear();
  // Odd factors of b pass odd factors of a with larger id.
  int swaps = 0;
  std::size_t odd_after = 0;
  for (const auto& [g, e] : a)
    if (gens[g].odd()) ++odd_after;
  std::size_t i = 0;
  for (const auto& [g, e] : b) {
    while (i < a.size() && a[i].first < g) {
      if (gens[a[i].first].odd()) --odd_after;
      out.push_back(a[i++]);
    }
    if (i < a.size() && a[i].first == g) {
      if (gens[g].odd()) return 0;
      out.emplace_back(g, a[i].second + e);
      ++i;
      continue;
    }
    if (gens[g].odd()) swaps += static_cast<int>(odd_after);
    out.emplace_back(g, e);
  }
  while (i < a.size()) out.push_back(a[i++]);
  return swaps % 2 ? -1 : 1;
}

FreeCGDA::FreeCGDA(RingTag tag, std::vector<Generator> gens, std::vector<Element> diff)
    : tag_(tag), gens_(std::move(gens)), diff_(std::move(diff)) {
  if (diff_.size() != gens_.size()) fail(ErrorCode::InvalidArgument, "one differential per generator required");
  std::set<std::string> names;
  for (const auto& g : gens_) {
    if (!names.insert(g.name).second) fail(ErrorCode::GeneratorNameCollision, "duplicate generator '" + g.name + "'");
    if (g.degree < 1) fail(ErrorCode::InvalidArgument, "generator '" + g.name + "' must have degree >= 1");
    if (g.fdeg < 0) fail(ErrorCode::InvalidArgument, "generator '" + g.name + "' has negative filtration");
  }
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Element& dg = diff_[i];
    if (!(dg.tag() == tag_)) fail(ErrorCode::TagMismatch, "differential of '" + gens_[i].name + "' over wrong ring");
    for (const auto& [m, c] : dg.terms()) {
      for (const auto& [g, e] : m) {
        if (g >= gens_.size()) fail(ErrorCode::InvalidArgument, "unknown generator id in differential");
        if (e == 0 || (gens_[g].odd() && e > 1)) fail(ErrorCode::InvalidArgument, "malformed monomial in differential");
      }
      if (degree(m) != gens_[i].degree + 1)
        fail(ErrorCode::InvalidArgument, "d(" + gens_[i].name + ") is not of degree " + std::to_string(gens_[i].degree + 1));
      if (fdeg(m) > gens_[i].fdeg)
        fail(ErrorCode::FiltrationViolation, "d(" + gens_[i].name + ") exceeds filtration " + std::to_string(gens_[i].fdeg));
    }
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (!d(diff_[i]).is_zero()) fail(ErrorCode::DifferentialNotSquareZero, "d(d(" + gens_[i].name + ")) != 0");
}

std::optional<std::uint32_t> FreeCGDA::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::uint32_t FreeCGDA::id(const std::string& name) const {
  auto i = find(name);
  if (!i) fail(ErrorCode::InvalidArgument, "unknown generator '" + name + "'");
  return *i;
}

Element FreeCGDA::gen(const std::string& name) const {
  return Element::term({{id(name), 1}}, Scalar::from_int(1, tag_));
}

Element FreeCGDA::one() const { return Element::constant(Scalar::from_int(1, tag_)); }

int FreeCGDA::degree(const Monomial& m) const {
  int s = 0;
  for (const auto& [g, e] : m) s += gens_[g].degree * static_cast<int>(e);
  return s;
}

int FreeCGDA::fdeg(const Monomial& m) const {
  int s = 0;
  for (const auto& [g, e] : m) s += gens_[g].fdeg * static_cast<int>(e);
  return s;
}

std::optional<int> FreeCGDA::degree(const Element& x) const {
  std::optional<int> out;
  for (const auto& [m, c] : x.terms()) {
    int dm = degree(m);
    if (out && *out != dm) fail(ErrorCode::InvalidArgument, "element is not homogeneous");
    out = dm;
  }
  return out;
}

int FreeCGDA::fdeg(const Element& x) const {
  int f = 0;
  for (const auto& [m, c] : x.terms()) f = std::max(f, fdeg(m));
  return f;
}

Element FreeCGDA::multiply(const Element& a, const Element& b) const {
  if (!(a.tag() == b.tag())) fail(ErrorCode::TagMismatch, "multiplying elements over different rings");
  Element r(a.tag());
  Monomial m;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = monomial_product(gens_, ma, mb, m);
      if (s == 0) continue;
      Scalar c = ca * cb;
      r.add_term(m, s > 0 ? c : -c);
    }
  return r;
}

Element FreeCGDA::power(const Element& a, unsigned n) const {
  Element r = Element::constant(Scalar::from_int(1, a.tag()));
  for (unsigned i = 0; i < n; ++i) r = multiply(r, a);
  return r;
}

Element FreeCGDA::d_monomial(const Monomial& m) const {
  Element r(tag_);
  int prefix_degree = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto [g, e] = m[i];
    const Element& dg = diff_[g];
    if (!dg.is_zero()) {
      Monomial prefix(m.begin(), m.begin() + i), suffix(m.begin() + i + 1, m.end());
      if (e > 1) prefix.emplace_back(g, e - 1);  // g is even, so g^{e-1} commutes into place
      Scalar c = Scalar::from_int(prefix_degree % 2 ? -static_cast<long>(e) : static_cast<long>(e), tag_);
      Element left = Element::term(prefix, c);
      Element right = Element::term(suffix, Scalar::from_int(1, tag_));
      r += multiply(multiply(left, dg), right);
    }
    prefix_degree += gens_[g].degree * static_cast<int>(e);
  }
  return r;
}

Element FreeCGDA::d(const Element& x) const {
  Element r(tag_);
  for (const auto& [m, c] : x.terms()) r += d_monomial(m).scaled(c);
  return r;
}

Element multiply(const FreeCGDA& a, const Element& x, const Element& y) { return a.multiply(x, y); }
Element extend_derivation(const FreeCGDA& a, const Element& x) { return a.d(x); }

namespace {

Element shift_ids(const Element& x, std::uint32_t offset) {
  Element r(x.tag());
  for (const auto& [m, c] : x.terms()) {
    Monomial s = m;
    for (auto& f : s) f.first += offset;
    r.add_term(s, c);
  }
  return r;
}

}  // namespace

FreeCGDA tensor(const FreeCGDA& a, const FreeCGDA& b) {
  if (!(a.tag() == b.tag())) fail(ErrorCode::TagMismatch, "tensor of algebras over different rings");
  std::vector<Generator> gens = a.generators();
  std::vector<Element> diff;
  for (std::size_t i = 0; i < a.size(); ++i) diff.push_back(a.differential(static_cast<std::uint32_t>(i)));
  const auto offset = static_cast<std::uint32_t>(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (a.find(b.generators()[i].name))
      fail(ErrorCode::GeneratorNameCollision, "generator '" + b.generators()[i].name + "' appears in both factors");
    gens.push_back(b.generators()[i]);
    diff.push_back(shift_ids(b.differential(static_cast<std::uint32_t>(i)), offset));
  }
  return FreeCGDA(a.tag(), std::move(gens), std::move(diff));
}

FreeCGDA free_extension(const FreeCGDA& b, const DgModule& v, const std::vector<Element>& tau) {
  if (tau.size() != v.basis.size() || v.d.size() != v.basis.size())
    fail(ErrorCode::InvalidArgument, "free extension data does not match the module basis");
  const RingTag& tag = b.tag();
  auto tau_of = [&](const std::vector<std::pair<std::uint32_t, Scalar>>& lin) {
    Element r(tag);
    for (const auto& [k, c] : lin) r += tau[k].scaled(c);
    return r;
  };
  for (std::size_t k = 0; k < v.basis.size(); ++k) {
    const auto& g = v.basis[k];
    if (!tau[k].is_zero()) {
      auto deg = b.degree(tau[k]);
      if (*deg != g.degree + 1)
        fail(ErrorCode::InvalidArgument, "twisting of '" + g.name + "' must have degree " + std::to_string(g.degree + 1));
      if (b.fdeg(tau[k]) > g.fdeg)
        fail(ErrorCode::FiltrationViolation, "twisting of '" + g.name + "' exceeds filtration " + std::to_string(g.fdeg));
    }
    for (const auto& [j, c] : v.d[k]) {
      if (j >= v.basis.size() || v.basis[j].degree != g.degree + 1)
        fail(ErrorCode::InvalidArgument, "module differential of '" + g.name + "' has the wrong degree");
      if (v.basis[j].fdeg > g.fdeg)
        fail(ErrorCode::FiltrationViolation, "module differential of '" + g.name + "' exceeds its filtration");
    }
    if (!(b.d(tau[k]) + tau_of(v.d[k])).is_zero())
      fail(ErrorCode::TwistingNotCochainMap, "d_B(tau(" + g.name + ")) != -tau(d_V(" + g.name + "))");
  }
  std::vector<Generator> gens = b.generators();
  std::vector<Element> diff;
  for (std::size_t i = 0; i < b.size(); ++i) diff.push_back(b.differential(static_cast<std::uint32_t>(i)));
  const auto offset = static_cast<std::uint32_t>(b.size());
  for (std::size_t k = 0; k < v.basis.size(); ++k) {
    if (b.find(v.basis[k].name)) fail(ErrorCode::GeneratorNameCollision, "generator '" + v.basis[k].name + "' already in B");
    gens.push_back(v.basis[k]);
    Element dv = tau[k];
    for (const auto& [j, c] : v.d[k]) dv.add_term({{offset + j, 1}}, c);
    diff.push_back(dv);
  }
  return FreeCGDA(tag, std::move(gens), std::move(diff));
}

namespace {

// table[n][deg] counting monomials with n factors.
std::vector<std::vector<std::size_t>> factor_table(const std::vector<Generator>& v, unsigned max_n, int max_degree,
                                                   std::optional<int> level) {
  // dp over (factors, degree, filtration)
  const int fmax = level ? *level : 0;
  const int fdim = level ? fmax + 1 : 1;
  auto idx = [&](unsigned n, int d, int f) { return (static_cast<std::size_t>(n) * (max_degree + 1) + d) * fdim + f; };
  std::vector<std::size_t> dp(static_cast<std::size_t>(max_n + 1) * (max_degree + 1) * fdim, 0);
  dp[idx(0, 0, 0)] = 1;
  for (const auto& g : v) {
    std::vector<std::size_t> next = dp;
    const int emax = g.odd() ? 1 : max_degree;
    for (unsigned n = 0; n <= max_n; ++n)
      for (int d = 0; d <= max_degree; ++d)
        for (int f = 0; f < fdim; ++f) {
          std::size_t base = dp[idx(n, d, f)];
          if (!base) continue;
          for (int e = 1; e <= emax; ++e) {
            unsigned n2 = n + e;
            int d2 = d + e * g.degree;
            int f2 = level ? f + e * g.fdeg : 0;
            if (n2 > max_n || d2 > max_degree || (level && f2 > fmax)) break;
            next[idx(n2, d2, f2)] += base;
          }
        }
    dp.swap(next);
  }
  std::vector<std::vector<std::size_t>> out(max_n + 1, std::vector<std::size_t>(max_degree + 1, 0));
  for (unsigned n = 0; n <= max_n; ++n)
    for (int d = 0; d <= max_degree; ++d)
      for (int f = 0; f < fdim; ++f) out[n][d] += dp[idx(n, d, f)];
  return out;
}

}  // namespace

std::vector<std::size_t> lambda_n_decomposition(const std::vector<Generator>& v, unsigned n, int max_degree,
                                                std::optional<int> level) {
  for (const auto& g : v)
    if (g.degree < 1) fail(ErrorCode::InvalidArgument, "generators must have positive degree");
  return factor_table(v, n, max_degree, level)[n];
}

std::vector<std::size_t> lambda_dimensions(const std::vector<Generator>& v, int max_degree, std::optional<int> level) {
  // Product of the Poincare series 1/(1-x^d) or (1+x^d), per filtration.
  const int fdim = level ? *level + 1 : 1;
  std::vector<std::size_t> dp(static_cast<std::size_t>(max_degree + 1) * fdim, 0);
  dp[0] = 1;
  for (const auto& g : v) {
    if (g.degree < 1) fail(ErrorCode::InvalidArgument, "generators must have positive degree");
    const int gf = level ? g.fdeg : 0;
    if (g.odd()) {
      for (int d = max_degree; d >= g.degree; --d)
        for (int f = fdim - 1; f >= gf; --f) dp[d * fdim + f] += dp[(d - g.degree) * fdim + f - gf];
    } else {
      for (int d = g.degree; d <= max_degree; ++d)
        for (int f = gf; f < fdim; ++f) dp[d * fdim + f] += dp[(d - g.degree) * fdim + f - gf];
    }
  }
  std::vector<std::size_t> out(max_degree + 1, 0);
  for (int d = 0; d <= max_degree; ++d)
    for (int f = 0; f < fdim; ++f) out[d] += dp[d * fdim + f];
  return out;
}

}  // namespace tame::graded
