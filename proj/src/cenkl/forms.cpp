#include <algorithm>
#include <bit>
#include <functional>

#include "tame/cenkl.hpp"

namespace tame::cenkl {

int form_degree(const FormMono& m) { return std::popcount(m.eps); }

int form_filtration(const FormMono& m) {
  int f = 0;
  for (std::size_t i = 0; i < m.alpha.size(); ++i) f = std::max(f, m.alpha[i] + static_cast<int>((m.eps >> i) & 1u));
  return f;
}

bool in_ideal(const FormMono& m) {
  for (std::size_t i = 0; i < m.alpha.size(); ++i)
    if (m.alpha[i] == 0 && !((m.eps >> i) & 1u)) return false;
  return true;
}

std::string to_string(const FormMono& m) {
  std::string s;
  for (std::size_t i = 0; i < m.alpha.size(); ++i) {
    if (m.alpha[i]) {
      if (!s.empty()) s += " ";
      s += "t" + std::to_string(i);
      if (m.alpha[i] > 1) s += "^" + std::to_string(m.alpha[i]);
    }
    if ((m.eps >> i) & 1u) {
      if (!s.empty()) s += " ";
      s += "dt" + std::to_string(i);
    }
  }
  return s.empty() ? "1" : s;
}

CubicalForm::CubicalForm(int n, int level) : n_(n), level_(level) {
  if (n < 0 || n > 30) fail(ErrorCode::InvalidArgument, "simplex dimension out of range");
  if (level < 0) fail(ErrorCode::InvalidArgument, "filtration level must be >= 0");
}

CubicalForm CubicalForm::one(int n, int level) {
  CubicalForm w(n, level);
  w.add(FormMono{std::vector<std::uint8_t>(n + 1, 0), 0}, 1);
  return w;
}

CubicalForm CubicalForm::t(int n, int i, unsigned power, int level) {
  if (i < 0 || i > n) fail(ErrorCode::InvalidArgument, "variable index out of range");
  CubicalForm w(n, level < 0 ? static_cast<int>(power) : level);
  FormMono m{std::vector<std::uint8_t>(n + 1, 0), 0};
  m.alpha[i] = static_cast<std::uint8_t>(power);
  w.add(m, 1);
  return w;
}

CubicalForm CubicalForm::dt(int n, int i, int level) {
  if (i < 0 || i > n) fail(ErrorCode::InvalidArgument, "variable index out of range");
  CubicalForm w(n, level);
  w.add(FormMono{std::vector<std::uint8_t>(n + 1, 0), 1u << i}, 1);
  return w;
}

CubicalForm CubicalForm::monomial(int n, int level, const FormMono& m, const Rational& c) {
  CubicalForm w(n, level);
  w.add(m, c);
  return w;
}

std::optional<int> CubicalForm::degree() const {
  std::optional<int> out;
  for (const auto& [m, c] : terms_) {
    int dm = form_degree(m);
    if (out && *out != dm) fail(ErrorCode::InvalidArgument, "form is not homogeneous");
    out = dm;
  }
  return out;
}

void CubicalForm::add(const FormMono& m, const Rational& c) {
  if (static_cast<int>(m.alpha.size()) != n_ + 1) fail(ErrorCode::InvalidArgument, "monomial on the wrong simplex");
  if (c == 0 || in_ideal(m)) return;
  if (form_filtration(m) > level_)
    fail(ErrorCode::FiltrationViolation,
         "monomial " + cenkl::to_string(m) + " exceeds filtration level " + std::to_string(level_));
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CubicalForm CubicalForm::with_level(int level) const {
  CubicalForm w(n_, level);
  for (const auto& [m, c] : terms_) w.add(m, c);
  return w;
}

CubicalForm CubicalForm::operator+(const CubicalForm& o) const {
  if (n_ != o.n_) fail(ErrorCode::InvalidArgument, "forms on different simplices");
  CubicalForm w = with_level(std::max(level_, o.level_));
  for (const auto& [m, c] : o.terms_) w.add(m, c);
  return w;
}

CubicalForm CubicalForm::operator-(const CubicalForm& o) const { return *this + o.scaled(-1); }

CubicalForm CubicalForm::scaled(const Rational& c) const {
  CubicalForm w(n_, level_);
  for (const auto& [m, a] : terms_) w.add(m, a * c);
  return w;
}

std::string CubicalForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    if (c != 1) s += "(" + c.get_str() + ") ";
    s += cenkl::to_string(m);
  }
  return s;
}

CubicalForm form_d(const CubicalForm& w) {
  CubicalForm out(w.n(), w.level());
  for (const auto& [m, c] : w.terms()) {
    int before = 0;  // dt factors to the left of position j
    for (int j = 0; j <= w.n(); ++j) {
      bool has_dt = (m.eps >> j) & 1u;
      if (!has_dt && m.alpha[j] > 0) {
        FormMono r = m;
        r.alpha[j] = static_cast<std::uint8_t>(m.alpha[j] - 1);
        r.eps |= 1u << j;
        Rational k = c * static_cast<long>(m.alpha[j]);
        out.add(r, before % 2 ? Rational(-k) : k);
      }
      if (has_dt) ++before;
    }
  }
  return out;
}

CubicalForm form_wedge(const CubicalForm& a, const CubicalForm& b) {
  if (a.n() != b.n()) fail(ErrorCode::InvalidArgument, "wedge of forms on different simplices");
  CubicalForm out(a.n(), a.level() + b.level());
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) {
      if (x.eps & y.eps) continue;
      // moving each dt of y left past the dt's of x with larger index
      int swaps = 0;
      for (int j = 0; j <= a.n(); ++j)
        if ((y.eps >> j) & 1u) swaps += std::popcount(x.eps >> (j + 1));
      FormMono r{x.alpha, x.eps | y.eps};
      bool overflow = false;
      for (std::size_t i = 0; i < r.alpha.size(); ++i) {
        unsigned s = r.alpha[i] + y.alpha[i];
        if (s > 255) overflow = true;
        r.alpha[i] = static_cast<std::uint8_t>(s);
      }
      if (overflow) fail(ErrorCode::InvalidArgument, "exponent overflow");
      Rational c = cx * cy;
      out.add(r, swaps % 2 ? Rational(-c) : c);
    }
  return out;
}

CubicalForm face_pullback(const CubicalForm& w, int i) {
  if (w.n() < 1 || i < 0 || i > w.n()) fail(ErrorCode::InvalidArgument, "face index out of range");
  CubicalForm out(w.n() - 1, w.level());
  for (const auto& [m, c] : w.terms()) {
    if ((m.eps >> i) & 1u) continue;
    FormMono r;
    r.alpha = m.alpha;
    r.alpha.erase(r.alpha.begin() + i);
    const std::uint32_t low = m.eps & ((1u << i) - 1);
    r.eps = low | ((m.eps >> (i + 1)) << i);
    out.add(r, c);
  }
  return out;
}

CubicalForm degeneracy_pullback(const CubicalForm& w, int i) {
  if (i < 0 || i > w.n()) fail(ErrorCode::InvalidArgument, "degeneracy index out of range");
  CubicalForm out(w.n() + 1, w.level());
  for (const auto& [m, c] : w.terms()) {
    FormMono r;
    r.alpha.assign(w.n() + 2, 0);
    for (int j = 0; j <= w.n(); ++j) r.alpha[j < i ? j : j + 1] = m.alpha[j];
    r.alpha[i] = m.alpha[i];
    const std::uint32_t low = m.eps & ((1u << i) - 1);
    const std::uint32_t high = (m.eps >> (i + 1)) << (i + 2);
    if (!((m.eps >> i) & 1u)) {
      r.eps = low | high;
      out.add(r, c);
      continue;
    }
    // t_{i+1} dt_i + t_i dt_{i+1}; both keep the position among the dt's
    FormMono a = r, b = r;
    a.alpha[i + 1] = static_cast<std::uint8_t>(a.alpha[i + 1] + 1);
    a.eps = low | high | (1u << i);
    b.alpha[i] = static_cast<std::uint8_t>(b.alpha[i] + 1);
    b.eps = low | high | (1u << (i + 1));
    out.add(a, c);
    out.add(b, c);
  }
  return out;
}

std::vector<FormMono> cubical_basis(int n, int p, int q) {
  std::vector<FormMono> out;
  if (n < 0 || p < 0 || q < 0 || p > n + 1) return out;
  FormMono cur{std::vector<std::uint8_t>(n + 1, 0), 0};
  std::function<void(int, int, bool)> rec = [&](int i, int left, bool has_zero) {
    if (i > n) {
      if (left == 0 && has_zero) out.push_back(cur);
      return;
    }
    if (left > n + 1 - i) return;
    for (int e = 0; e <= std::min(1, left); ++e)
      for (int a = 0; a + e <= q; ++a) {
        cur.alpha[i] = static_cast<std::uint8_t>(a);
        if (e) cur.eps |= 1u << i;
        rec(i + 1, left - e, has_zero || a + e == 0);
        cur.eps &= ~(1u << i);
      }
    cur.alpha[i] = 0;
  };
  rec(0, p, false);
  std::sort(out.begin(), out.end());
  return out;
}

CubicalForm pullback(const CubicalForm& w, const std::vector<int>& theta) {
  if (theta.empty() || theta.front() != 0 || theta.back() != w.n())
    fail(ErrorCode::InvalidArgument, "degeneracy operator does not match the form");
  // theta = theta' o sigma_a with a the first repeated position
  for (std::size_t a = 0; a + 1 < theta.size(); ++a)
    if (theta[a] == theta[a + 1]) {
      std::vector<int> rest(theta);
      rest.erase(rest.begin() + static_cast<long>(a) + 1);
      return degeneracy_pullback(pullback(w, rest), static_cast<int>(a));
    }
  return w;
}

}  // namespace tame::cenkl
