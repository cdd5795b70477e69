#include <cctype>

#include "tame/io.hpp"

namespace tame::io {

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  std::string digits() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) error("expected a number");
    std::string out = s_.substr(i_, j - i_);
    i_ = j;
    return out;
  }
  std::string name() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    std::string out = s_.substr(i_, j - i_);
    i_ = j;
    return out;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, what + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

std::vector<ParsedTerm> parse_polynomial(const std::string& text) {
  Lexer lx(text);
  std::vector<ParsedTerm> out;
  if (lx.done()) lx.error("empty expression");
  bool first = true;
  while (!lx.done()) {
    bool negative = false;
    if (lx.accept('+')) {
    } else if (lx.accept('-')) {
      negative = true;
    } else if (!first) {
      lx.error("expected '+' or '-'");
    }
    while (true) {
      if (lx.accept('-'))
        negative = !negative;
      else if (!lx.accept('+'))
        break;
    }
    first = false;
    ParsedTerm t{coeff::Rational(negative ? -1 : 1), {}};
    do {
      const char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = lx.digits();
        if (lx.accept('/')) num += "/" + lx.digits();
        coeff::Rational q(num);
        if (q.get_den() == 0) lx.error("zero denominator");
        q.canonicalize();
        t.coeff *= q;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string n = lx.name();
        unsigned e = 1;
        if (lx.accept('^')) {
          const std::string d = lx.digits();
          if (d.size() > 4) lx.error("exponent too large");
          e = static_cast<unsigned>(std::stoul(d));
        }
        t.factors.emplace_back(std::move(n), e);
      } else {
        lx.error("expected a coefficient or a generator");
      }
    } while (lx.accept('*'));
    if (t.coeff != 0) out.push_back(std::move(t));
  }
  return out;
}

graded::Element to_element(const graded::FreeCGDA& a, const std::vector<ParsedTerm>& terms) {
  graded::Element acc(a.tag());
  for (const auto& t : terms) {
    graded::Element x = graded::Element::constant(coeff::Scalar::from_rational(t.coeff, a.tag()));
    for (const auto& [name, e] : t.factors) {
      if (!a.find(name)) fail(ErrorCode::ParseError, "unknown generator '" + name + "'");
      x = a.multiply(x, a.power(a.gen(name), e));
    }
    acc += x;
  }
  return acc;
}

homology::FpPoly to_fp(const homology::FpAlgebra& a, const std::vector<ParsedTerm>& terms) {
  homology::FpPoly acc;
  for (const auto& t : terms) {
    homology::FpPoly x = a.monomial(homology::Mono{}, static_cast<fp::u32>(coeff::residue_of(t.coeff, a.p())));
    for (const auto& [name, e] : t.factors) {
      std::size_t id = 0;
      while (id < a.gens().size() && a.gens()[id].name != name) ++id;
      if (id == a.gens().size()) fail(ErrorCode::ParseError, "unknown generator '" + name + "'");
      if (e > 255) fail(ErrorCode::ParseError, "exponent too large");
      x = a.mul(x, a.monomial(a.generator(id, static_cast<std::uint8_t>(e))));
    }
    add_scaled(acc, 1, x, a.field());
  }
  return acc;
}

std::string element_string(const graded::FreeCGDA& a, const graded::Element& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : x.terms()) {
    coeff::Rational q = c.rational();
    const bool negative = q < 0 && !a.tag().is_prime_field();
    if (negative) q = -q;
    if (s.empty())
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    std::string mono;
    for (const auto& [id, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += a.generators()[id].name;
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      s += q.get_str();
    else if (q == 1)
      s += mono;
    else
      s += q.get_str() + "*" + mono;
  }
  return s;
}

std::vector<int> parse_dims(const std::string& csv) {
  std::vector<int> out;
  if (csv.empty() || csv == "point") return out;
  std::size_t i = 0;
  while (i <= csv.size()) {
    std::size_t j = csv.find(',', i);
    if (j == std::string::npos) j = csv.size();
    const std::string part = csv.substr(i, j - i);
    if (part.empty() || part.size() > 3 || part.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorCode::ParseError, "expected comma-separated sphere dimensions, got '" + csv + "'");
    out.push_back(std::stoi(part));
    i = j + 1;
  }
  return out;
}

}  // namespace tame::io
