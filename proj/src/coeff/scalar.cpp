#include "tame/coeff.hpp"

namespace tame::coeff {

Scalar::Scalar(RingTag tag) : tag_(tag) {
  if (tag_.is_prime_field())
    v_ = std::uint64_t{0};
  else
    v_ = Rational(0);
}

Scalar Scalar::from_rational(const Rational& x, RingTag tag) {
  Scalar s(tag);
  if (tag.is_prime_field()) {
    s.v_ = residue_of(x, tag.param);
    return s;
  }
  if (!in_ring(x, tag)) fail(ErrorCode::NotInRing, x.get_str() + " is not in " + tag.to_string());
  Rational c = x;
  c.canonicalize();
  s.v_ = c;
  return s;
}

Scalar Scalar::from_int(long v, RingTag tag) { return from_rational(Rational(v), tag); }

Scalar Scalar::from_residue(std::uint64_t r, RingTag field_tag) {
  if (!field_tag.is_prime_field()) fail(ErrorCode::InvalidArgument, "from_residue needs a prime field");
  Scalar s(field_tag);
  s.v_ = r % field_tag.param;
  return s;
}

Scalar Scalar::parse(const std::string& text, RingTag tag) {
  Rational x;
  if (x.set_str(text, 10) != 0) fail(ErrorCode::ParseError, "bad coefficient '" + text + "'");
  if (x.get_den() == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  x.canonicalize();
  return from_rational(x, tag);
}

bool Scalar::is_zero() const {
  if (auto* r = std::get_if<std::uint64_t>(&v_)) return *r == 0;
  return std::get<Rational>(v_) == 0;
}

bool Scalar::is_one() const {
  if (auto* r = std::get_if<std::uint64_t>(&v_)) return *r == 1;
  return std::get<Rational>(v_) == 1;
}

bool Scalar::is_unit() const {
  if (is_zero()) return false;
  if (tag_.is_field()) return true;
  return in_ring(1 / std::get<Rational>(v_), tag_);
}

Rational Scalar::rational() const {
  if (auto* r = std::get_if<std::uint64_t>(&v_)) return Rational(static_cast<unsigned long>(*r));
  return std::get<Rational>(v_);
}

std::uint64_t Scalar::residue() const {
  if (auto* r = std::get_if<std::uint64_t>(&v_)) return *r;
  fail(ErrorCode::InvalidArgument, "residue() on a non-field scalar");
}

void Scalar::require_same(const Scalar& o) const {
  if (!(tag_ == o.tag_))
    fail(ErrorCode::TagMismatch, "arithmetic between " + tag_.to_string() + " and " + o.tag_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same(o);
  Scalar s(tag_);
  if (tag_.is_prime_field())
    s.v_ = (std::get<std::uint64_t>(v_) + std::get<std::uint64_t>(o.v_)) % tag_.param;
  else
    s.v_ = Rational(std::get<Rational>(v_) + std::get<Rational>(o.v_));
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same(o);
  Scalar s(tag_);
  if (tag_.is_prime_field())
    s.v_ = (std::get<std::uint64_t>(v_) + tag_.param - std::get<std::uint64_t>(o.v_)) % tag_.param;
  else
    s.v_ = Rational(std::get<Rational>(v_) - std::get<Rational>(o.v_));
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same(o);
  Scalar s(tag_);
  if (tag_.is_prime_field())
    s.v_ = (std::get<std::uint64_t>(v_) * std::get<std::uint64_t>(o.v_)) % tag_.param;
  else
    s.v_ = Rational(std::get<Rational>(v_) * std::get<Rational>(o.v_));
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s(tag_);
  if (tag_.is_prime_field())
    s.v_ = (tag_.param - std::get<std::uint64_t>(v_)) % tag_.param;
  else
    s.v_ = Rational(-std::get<Rational>(v_));
  return s;
}

Scalar Scalar::inverse() const {
  if (!is_unit()) fail(ErrorCode::NotInRing, to_string() + " is not a unit of " + tag_.to_string());
  Scalar s(tag_);
  if (tag_.is_prime_field())
    s.v_ = mod_inverse(std::get<std::uint64_t>(v_), tag_.param);
  else
    s.v_ = Rational(1 / std::get<Rational>(v_));
  return s;
}

Scalar Scalar::retag(RingTag tag) const {
  if (tag == tag_) return *this;
  return from_rational(rational(), tag);
}

std::string Scalar::to_string() const {
  if (auto* r = std::get_if<std::uint64_t>(&v_)) return std::to_string(*r);
  return std::get<Rational>(v_).get_str();
}

bool operator==(const Scalar& a, const Scalar& b) { return a.tag_ == b.tag_ && a.v_ == b.v_; }

Scalar reduce_mod_l(const Scalar& x, std::uint64_t l) {
  RingTag field = RingTag::prime_field(l);
  if (x.tag().is_prime_field()) {
    if (x.tag().param != l) fail(ErrorCode::TagMismatch, "cannot reduce an F_p scalar modulo a different prime");
    return x;
  }
  return Scalar::from_residue(residue_of(x.rational(), l), field);
}

}  // namespace tame::coeff
