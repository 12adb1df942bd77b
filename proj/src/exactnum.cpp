#include "dfdom/exactnum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace dfd {

const Real& real_tolerance() {
  static const Real eps = boost::multiprecision::ldexp(Real(1), -80);
  return eps;
}

Real real_from(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real real_pi() {
  static const Real pi = boost::multiprecision::acos(Real(-1));
  return pi;
}

bool is_squarefree(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

QuadRat::QuadRat(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (!is_squarefree(d)) {
    throw std::invalid_argument("QuadRat: d must be square-free and > 1, got " + std::to_string(d));
  }
}

long QuadRat::merged_field(const QuadRat& y) const {
  if (d_ == 0) return y.d_;
  if (y.d_ == 0 || y.d_ == d_) return d_;
  throw FieldMismatch("QuadRat: mixing sqrt(" + std::to_string(d_) + ") and sqrt(" +
                      std::to_string(y.d_) + ")");
}

bool QuadRat::is_integer() const {
  return is_rational() && a_.get_den() == 1;
}

int QuadRat::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 against b^2 d
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * d_;
  const int c = cmp(lhs, rhs);
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

QuadRat QuadRat::conj() const {
  QuadRat r = *this;
  r.b_ = -r.b_;
  return r;
}

Rational QuadRat::norm() const {
  return a_ * a_ - b_ * b_ * d_;
}

QuadRat QuadRat::operator-() const {
  QuadRat r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadRat& QuadRat::operator+=(const QuadRat& y) {
  d_ = merged_field(y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

QuadRat& QuadRat::operator-=(const QuadRat& y) {
  d_ = merged_field(y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

QuadRat& QuadRat::operator*=(const QuadRat& y) {
  const long d = merged_field(y);
  Rational na = a_ * y.a_;
  if (sgn(b_) != 0 && sgn(y.b_) != 0) na += b_ * y.b_ * d;
  Rational nb = a_ * y.b_ + b_ * y.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  d_ = d;
  return *this;
}

QuadRat& QuadRat::operator/=(const QuadRat& y) {
  if (y.is_zero()) throw DivisionByZero("QuadRat: division by zero");
  const long d = merged_field(y);
  const Rational n = y.norm();
  QuadRat yc = y.conj();
  *this *= yc;
  a_ /= n;
  b_ /= n;
  d_ = d;
  return *this;
}

bool operator==(const QuadRat& x, const QuadRat& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  return x.is_rational() || x.d_ == y.d_;
}

std::strong_ordering operator<=>(const QuadRat& x, const QuadRat& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int sgn(const QuadRat& x) { return x.sign(); }

int sgn(const Real& x) {
  if (boost::multiprecision::abs(x) <= real_tolerance()) return 0;
  return x < 0 ? -1 : 1;
}

QuadRat abs(const QuadRat& x) { return x.sign() < 0 ? -x : x; }

Real to_real(const QuadRat& x) {
  Real r = real_from(x.a());
  if (!x.is_rational()) r += real_from(x.b()) * boost::multiprecision::sqrt(Real(x.d()));
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer n = sqrt(q.get_num());
  Integer dd = sqrt(q.get_den());
  Rational r(n, dd);
  r.canonicalize();
  return r;
}

namespace {

// n = r^2 k with k square-free; nullopt when a large cofactor defeats trial division
std::optional<std::pair<Integer, long>> split_square(Integer n) {
  Integer r = 1;
  Integer k = 1;
  for (unsigned long p = 2; p < 100000 && Integer(p) * p <= n; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p * p) != 0) {
      n /= p * p;
      r *= p;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      n /= p;
      k *= p;
    }
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
      r *= sqrt(n);
    } else if (n < Integer(100000) * 100000) {
      k *= n;
    } else {
      return std::nullopt;
    }
  }
  if (!k.fits_slong_p()) return std::nullopt;
  return std::make_pair(r, k.get_si());
}

}  // namespace

std::optional<QuadRat> sqrt_exact(const QuadRat& x) {
  const int s = x.sign();
  if (s < 0) return std::nullopt;
  if (s == 0) return QuadRat(0);
  if (x.is_rational()) {
    if (auto r = rational_sqrt(x.a())) return QuadRat(*r);
    if (x.d() != 0) {
      // a = r^2 d  =>  sqrt(a) = r sqrt(d)
      if (auto r = rational_sqrt(x.a() / x.d())) return QuadRat(0, *r, x.d());
      return std::nullopt;
    }
    // no field yet: adjoin the square-free part of num*den
    const Integer nd = x.a().get_num() * x.a().get_den();
    auto split = split_square(nd);
    if (!split) return std::nullopt;
    const Rational coeff(split->first, x.a().get_den());
    return QuadRat(0, coeff, split->second);
  }
  // (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 = (a +- sqrt(N)) / 2, v = b / 2u
  auto n = rational_sqrt(x.norm());
  if (!n) return std::nullopt;
  for (const Rational& cand : {Rational((x.a() + *n) / 2), Rational((x.a() - *n) / 2)}) {
    auto u = rational_sqrt(cand);
    if (!u || sgn(*u) == 0) continue;
    QuadRat root(*u, x.b() / (2 * *u), x.d());
    if (root.sign() < 0) root = -root;
    if (root * root == x) return root;
  }
  return std::nullopt;
}

std::optional<Real> sqrt_exact(const Real& x) {
  const int s = sgn(x);
  if (s < 0) return std::nullopt;
  if (s == 0) return Real(0);
  return boost::multiprecision::sqrt(x);
}

Integer floor_exact(const QuadRat& x) {
  if (x.is_rational()) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.a().get_num_mpz_t(), x.a().get_den_mpz_t());
    return f;
  }
  // guess from a float and correct exactly
  Integer k = floor_exact(to_real(x));
  while (QuadRat(Rational(k)) > x) k -= 1;
  while (QuadRat(Rational(k + 1)) <= x) k += 1;
  return k;
}

namespace {

Integer to_integer(const Real& integral) {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), integral.backend().data(), MPFR_RNDN);
  return z;
}

}  // namespace

Integer floor_exact(const Real& x) {
  // values within tolerance of an integer snap to it
  const Real n = boost::multiprecision::round(x);
  if (sgn(Real(x - n)) == 0) return to_integer(n);
  return to_integer(boost::multiprecision::floor(x));
}

Real scale(const Real& w, const Integer& k) {
  return w * real_from(Rational(k));
}

bool is_integral(const QuadRat& x) { return x.is_integer(); }

bool is_integral(const Real& x) {
  return sgn(Real(x - boost::multiprecision::round(x))) == 0;
}

Approximation approx(const QuadRat& x, unsigned bits) {
  if (bits < 16) throw std::invalid_argument("approx: bits must be >= 16");
  // absolute error 2^-bits needs bits + magnitude + guard bits of precision
  long mag = 0;
  auto exponent_of = [](const Rational& q) -> long {
    if (sgn(q) == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) + 1;
  };
  mag = std::max(exponent_of(x.a()), exponent_of(x.b()) + 4 + (x.d() > 0 ? 32 : 0));
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + 16 + std::max(0L, mag);

  mpfr_t acc, term, root;
  mpfr_inits2(prec, acc, term, root, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(acc, x.a().get_mpq_t(), MPFR_RNDN);
  if (!x.is_rational()) {
    mpfr_set_ui(root, static_cast<unsigned long>(x.d()), MPFR_RNDN);
    mpfr_sqrt(root, root, MPFR_RNDN);
    mpfr_set_q(term, x.b().get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term, term, root, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  Approximation out;
  out.bits = bits;
  out.value = BigFloat(boost::multiprecision::mpfr_float_backend<0>(acc));
  mpfr_clears(acc, term, root, static_cast<mpfr_ptr>(nullptr));
  return out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const QuadRat& x) {
  if (x.is_rational()) return to_string(x.a());
  return to_string(x.a()) + "+" + to_string(x.b()) + "*sqrt(" + std::to_string(x.d()) + ")";
}

std::string to_string(const Real& x, int digits) {
  return x.str(digits, std::ios_base::fmtflags(0));
}

std::string key_of(const Real& x) {
  if (sgn(x) == 0) return "0";
  return x.str(24, std::ios_base::scientific);
}

std::ostream& operator<<(std::ostream& os, const QuadRat& x) { return os << to_string(x); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

[[noreturn]] void parse_fail(std::string_view text) {
  throw std::invalid_argument("not a canonical QuadRat: \"" + std::string(text) + "\"");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool neg = false;
  if (!body.empty() && body.front() == '-') {
    neg = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) parse_fail(text);
  Integer n{std::string(num)};
  Integer d = den.empty() ? Integer(1) : Integer{std::string(den)};
  if (d == 0) parse_fail(text);
  if (neg) n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

QuadRat parse_quadrat(std::string_view text) {
  constexpr std::string_view kSqrt = "*sqrt(";
  const auto root_at = text.find(kSqrt);
  if (root_at == std::string_view::npos) return QuadRat(parse_rational(text));
  if (text.back() != ')') parse_fail(text);
  const std::string_view dtext = text.substr(root_at + kSqrt.size(), text.size() - root_at - kSqrt.size() - 1);
  if (!all_digits(dtext)) parse_fail(text);
  const long d = std::stol(std::string(dtext));
  // split "a+b" at the '+' that precedes b (b itself may start with '-')
  const std::string_view ab = text.substr(0, root_at);
  const auto plus = ab.find('+');
  if (plus == std::string_view::npos) parse_fail(text);
  const Rational a = parse_rational(ab.substr(0, plus));
  const Rational b = parse_rational(ab.substr(plus + 1));
  if (sgn(b) == 0) parse_fail(text);
  return QuadRat(a, b, d);
}

}  // namespace dfd
