#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dfd {

using Integer = mpz_class;
using Rational = mpq_class;

/// Working precision for quantities that leave the quadratic field: angles,
/// lengths, and polygons whose angles are arbitrary submultiples of pi.
/// 40 decimal digits is at least 128 bits of mantissa.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>,
                                           boost::multiprecision::et_off>;

/// Variable-precision float returned by approx().
using BigFloat = boost::multiprecision::mpfr_float;

/// Absolute tolerance 2^-80 used for coincidence tests on Real values.
const Real& real_tolerance();

Real real_from(const Rational& q);
Real real_pi();

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_squarefree(long d);

/// Element a + b*sqrt(d) of a real quadratic field.
///
/// A value with b == 0 may leave d unset (d() == 0); such pure rationals
/// combine with any field. Two values that both carry a field must agree on
/// d, otherwise FieldMismatch is thrown.
class QuadRat {
 public:
  QuadRat() = default;
  QuadRat(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QuadRat(int v) : a_(v) {}   // NOLINT(google-explicit-constructor)
  QuadRat(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadRat(Rational a, Rational b, long d);

  /// sqrt(d) as an element of Q(sqrt d).
  static QuadRat root(long d) { return QuadRat(0, 1, d); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long d() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  /// Rational integer (b == 0, denominator 1).
  bool is_integer() const;

  int sign() const;
  QuadRat conj() const;
  Rational norm() const;

  QuadRat operator-() const;
  QuadRat& operator+=(const QuadRat& y);
  QuadRat& operator-=(const QuadRat& y);
  QuadRat& operator*=(const QuadRat& y);
  QuadRat& operator/=(const QuadRat& y);

  friend QuadRat operator+(QuadRat x, const QuadRat& y) { return x += y; }
  friend QuadRat operator-(QuadRat x, const QuadRat& y) { return x -= y; }
  friend QuadRat operator*(QuadRat x, const QuadRat& y) { return x *= y; }
  friend QuadRat operator/(QuadRat x, const QuadRat& y) { return x /= y; }

  friend bool operator==(const QuadRat& x, const QuadRat& y);
  friend std::strong_ordering operator<=>(const QuadRat& x, const QuadRat& y);

 private:
  long merged_field(const QuadRat& y) const;

  Rational a_;
  Rational b_;
  long d_ = 0;
};

int sgn(const QuadRat& x);
int sgn(const Real& x);
QuadRat abs(const QuadRat& x);

Real to_real(const QuadRat& x);
inline Real to_real(const Real& x) { return x; }

/// Square root inside the field. A rational with no field attached gets
/// sqrt(k) adjoined for its square-free part k.
std::optional<QuadRat> sqrt_exact(const QuadRat& x);
/// Square root of a nonnegative Real (within tolerance); nullopt if negative.
std::optional<Real> sqrt_exact(const Real& x);

std::optional<Rational> rational_sqrt(const Rational& q);



/// floor(x) as an integer, decided exactly.
Integer floor_exact(const QuadRat& x);
Integer floor_exact(const Real& x);

/// x * w for integer k, used to apply translation powers.
inline QuadRat scale(const QuadRat& w, const Integer& k) { return w * QuadRat(Rational(k)); }
Real scale(const Real& w, const Integer& k);

/// True when x is a rational integer; for Real within tolerance.
bool is_integral(const QuadRat& x);
bool is_integral(const Real& x);

/// Value within 2^-bits of a + b*sqrt(d).
struct Approximation {
  BigFloat value;
  unsigned bits = 0;
  double to_double() const { return value.convert_to<double>(); }
};
Approximation approx(const QuadRat& x, unsigned bits);

std::string to_string(const Rational& q);
/// Canonical text form "a" or "a+b*sqrt(d)" with a, b written as p or p/q.
std::string to_string(const QuadRat& x);
std::string to_string(const Real& x, int digits = 30);
std::ostream& operator<<(std::ostream& os, const QuadRat& x);

/// Parses the canonical form only: no whitespace, "p", "p/q", or
/// "a+b*sqrt(d)" where a and b are rationals in that form.
QuadRat parse_quadrat(std::string_view text);
Rational parse_rational(std::string_view text);

/// Field carried by x (0 when none); Real carries none.
inline long field_of(const QuadRat& x) { return x.d(); }
inline long field_of(const Real&) { return 0; }
/// x with the field sqrt(d) attached when it has none yet.
inline QuadRat in_field(const QuadRat& x, long d) {
  return (d == 0 || x.d() != 0) ? x : QuadRat(x.a(), x.b(), d);
}
inline Real in_field(const Real& x, long) { return x; }

template <class F>
F from_rational(const Rational& q);
template <>
inline QuadRat from_rational<QuadRat>(const Rational& q) { return QuadRat(q); }
template <>
inline Real from_rational<Real>(const Rational& q) { return real_from(q); }

/// Fast double estimate, used only to skip exact work that cannot matter.
inline double to_double(const QuadRat& x) {
  double v = x.a().get_d();
  if (!x.is_rational()) v += x.b().get_d() * std::sqrt(static_cast<double>(x.d()));
  return v;
}
inline double to_double(const Real& x) { return x.convert_to<double>(); }

/// Text key that identifies equal values (exact for QuadRat, rounded for Real).
inline std::string key_of(const QuadRat& x) { return to_string(x); }
std::string key_of(const Real& x);

}  // namespace dfd
