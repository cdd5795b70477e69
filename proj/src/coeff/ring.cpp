#include "tame/coeff.hpp"

namespace tame {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::NotInRing: return "NotInRing";
    case ErrorCode::NonInvertibleDenominator: return "NonInvertibleDenominator";
    case ErrorCode::NotAPid: return "NotAPid";
    case ErrorCode::GeneratorNameCollision: return "GeneratorNameCollision";
    case ErrorCode::DifferentialNotSquareZero: return "DifferentialNotSquareZero";
    case ErrorCode::FiltrationViolation: return "FiltrationViolation";
    case ErrorCode::TwistingNotCochainMap: return "TwistingNotCochainMap";
    case ErrorCode::NotCochainMap: return "NotCochainMap";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::TwistNotCongruentToM: return "TwistNotCongruentToM";
    case ErrorCode::DeformationNotSquareZero: return "DeformationNotSquareZero";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::NotFiniteDimensional: return "NotFiniteDimensional";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::ScheduleDegreeTooTame: return "ScheduleDegreeTooTame";
    case ErrorCode::SimplicialIdentityViolation: return "SimplicialIdentityViolation";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace tame

namespace tame::coeff {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= n; ++k)
    if (is_prime(k)) out.push_back(k);
  return out;
}

RingTag RingTag::local_at(std::uint64_t l) {
  if (!is_prime(l)) fail(ErrorCode::InvalidArgument, "Z_(l) needs a prime l, got " + std::to_string(l));
  return {RingKind::LocalAt, l};
}

RingTag RingTag::prime_field(std::uint64_t l) {
  if (!is_prime(l)) fail(ErrorCode::InvalidArgument, "F_l needs a prime l, got " + std::to_string(l));
  if (l >= (1ull << 31)) fail(ErrorCode::InvalidArgument, "F_l with l >= 2^31 is not supported");
  return {RingKind::PrimeField, l};
}

std::string RingTag::to_string() const {
  switch (kind) {
    case RingKind::LocalizedUpTo: return "Q_" + std::to_string(param);
    case RingKind::LocalAt: return "Z_(" + std::to_string(param) + ")";
    case RingKind::PrimeField: return "F_" + std::to_string(param);
    case RingKind::Rationals: return "Q";
  }
  return "?";
}

namespace {

// Strips every prime <= q from |n|.
Integer strip_small_primes(Integer n, std::uint64_t q) {
  n = abs(n);
  if (n == 0) return n;
  for (std::uint64_t p : primes_up_to(q)) {
    Integer pp(static_cast<unsigned long>(p));
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) n /= pp;
  }
  return n;
}

}  // namespace

bool in_ring(const Rational& x, const RingTag& tag) {
  const Integer& den = x.get_den();
  switch (tag.kind) {
    case RingKind::Rationals: return true;
    case RingKind::LocalizedUpTo: return strip_small_primes(den, tag.param) == 1;
    case RingKind::LocalAt:
    case RingKind::PrimeField: return mpz_fdiv_ui(den.get_mpz_t(), tag.param) != 0;
  }
  return false;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  if (nr == 0) fail(ErrorCode::NonInvertibleDenominator, "0 has no inverse mod " + std::to_string(p));
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t residue_of(const Rational& x, std::uint64_t l) {
  std::uint64_t den = mpz_fdiv_ui(x.get_den().get_mpz_t(), l);
  if (den == 0)
    fail(ErrorCode::NonInvertibleDenominator,
         std::to_string(l) + " divides the denominator of " + x.get_str());
  std::uint64_t num = mpz_fdiv_ui(x.get_num().get_mpz_t(), l);
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) * mod_inverse(den, l)) % l);
}

Integer euclidean_norm(const Scalar& x) {
  if (x.is_zero()) return 0;
  const RingTag& t = x.tag();
  switch (t.kind) {
    case RingKind::PrimeField:
    case RingKind::Rationals: return 1;
    case RingKind::LocalAt: {
      Integer n = abs(x.rational().get_num());
      Integer l(static_cast<unsigned long>(t.param));
      Integer out = 1;
      while (mpz_divisible_p(n.get_mpz_t(), l.get_mpz_t())) {
        n /= l;
        out *= l;
      }
      return out;
    }
    case RingKind::LocalizedUpTo: return strip_small_primes(x.rational().get_num(), t.param);
  }
  return 1;
}

Scalar canonical_associate(const Scalar& x) {
  if (x.is_zero()) return x;
  if (x.tag().is_field()) return Scalar::from_int(1, x.tag());
  return Scalar::from_rational(Rational(euclidean_norm(x)), x.tag());
}

DivMod divmod(const Scalar& a, const Scalar& b) {
  if (!(a.tag() == b.tag())) fail(ErrorCode::TagMismatch, "divmod over different rings");
  if (b.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero");
  const RingTag& t = a.tag();
  Scalar zero(t);
  if (a.is_zero()) return {zero, zero};
  switch (t.kind) {
    case RingKind::PrimeField:
    case RingKind::Rationals: return {a * b.inverse(), zero};
    case RingKind::LocalAt: {
      if (euclidean_norm(b) <= euclidean_norm(a))
        return {Scalar::from_rational(a.rational() / b.rational(), t), zero};
      return {zero, a};
    }
    case RingKind::LocalizedUpTo: {
      Integer na = euclidean_norm(a), nb = euclidean_norm(b);
      Rational ua = a.rational() / Rational(na), ub = b.rational() / Rational(nb);
      Integer k, rho;
      mpz_fdiv_qr(k.get_mpz_t(), rho.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
      Scalar quot = Scalar::from_rational(ua * Rational(k) / ub, t);
      Scalar rem = Scalar::from_rational(ua * Rational(rho), t);
      return {quot, rem};
    }
  }
  return {zero, a};
}

bool divides(const Scalar& b, const Scalar& a) {
  if (a.is_zero()) return true;
  if (b.is_zero()) return false;
  return divmod(a, b).remainder.is_zero();
}

}  // namespace tame::coeff
