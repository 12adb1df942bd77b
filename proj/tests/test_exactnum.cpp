#include "doctest.h"

#include "dfdom/exactnum.hpp"

#include <random>

using namespace dfd;

namespace {

QuadRat q11(long a_num, long a_den, long b_num, long b_den) {
  return QuadRat(Rational(a_num, a_den), Rational(b_num, b_den), 11);
}

// independent sign oracle: 200-bit evaluation through MPFR directly
int float_sign(const QuadRat& x) {
  mpfr_t v, r;
  mpfr_inits2(400, v, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(v, x.a().get_mpq_t(), MPFR_RNDN);
  if (!x.is_rational()) {
    mpfr_set_ui(r, static_cast<unsigned long>(x.d()), MPFR_RNDN);
    mpfr_sqrt(r, r, MPFR_RNDN);
    mpfr_mul_q(r, r, x.b().get_mpq_t(), MPFR_RNDN);
    mpfr_add(v, v, r, MPFR_RNDN);
  }
  const int s = mpfr_sgn(v);
  mpfr_clears(v, r, static_cast<mpfr_ptr>(nullptr));
  return s;
}

}  // namespace

TEST_CASE("field arithmetic") {
  const QuadRat one(1);
  const QuadRat r = QuadRat::root(11);
  CHECK(one * r == r);
  CHECK(r * r == QuadRat(11));
  const QuadRat inv = r / QuadRat(11);
  CHECK(inv == q11(0, 1, 1, 11));
  CHECK(inv * r == QuadRat(1));
  CHECK_THROWS_AS(r / QuadRat(0), DivisionByZero);
  CHECK_THROWS_AS(r + QuadRat::root(2), FieldMismatch);
  CHECK_THROWS_AS(QuadRat(1, 1, 12), std::invalid_argument);
  // a rational without an attached field mixes with any field
  CHECK(QuadRat(Rational(1, 2)) + QuadRat::root(2) == QuadRat(Rational(1, 2), 1, 2));
}

TEST_CASE("exact sign") {
  CHECK(sgn(QuadRat(0)) == 0);
  // 100/9 > 11, so this one is slightly negative
  CHECK(sgn(q11(-10, 3, 1, 1)) == -1);
  CHECK(sgn(q11(-10, 3, 1, 1) + Rational(1, 50)) == 1);
  CHECK(sgn(q11(7, 1, -2, 1)) == 1);
  CHECK(sgn(q11(-7, 1, 2, 1)) == -1);
  CHECK(sgn(q11(-10, 3, 1, 1)) == float_sign(q11(-10, 3, 1, 1)));
  CHECK(q11(3, 1, 0, 1) < QuadRat::root(11));
  CHECK(QuadRat::root(11) < QuadRat(4));
}

TEST_CASE("approximations") {
  const QuadRat x = q11(0, 1, 1, 11);
  const auto a = approx(x, 53);
  CHECK(a.to_double() == doctest::Approx(0.30151134457776363).epsilon(1e-15));
  // oracle: 11 * a^2 = 1 within the stated bound
  BigFloat sq = a.value * a.value * 11;
  CHECK(boost::multiprecision::abs(sq - 1) < boost::multiprecision::ldexp(BigFloat(1), -50));
  CHECK(approx(QuadRat(0), 53).to_double() == 0.0);
  const auto s = approx(QuadRat::root(11), 53);
  CHECK(s.to_double() == doctest::Approx(3.3166247903554));
  CHECK(boost::multiprecision::abs(s.value * s.value - 11) < boost::multiprecision::ldexp(BigFloat(1), -48));
  CHECK_THROWS(approx(x, 8));
  // monotone in bits: finer approximations stay inside coarser bounds
  const auto fine = approx(x, 200);
  CHECK(boost::multiprecision::abs(fine.value - a.value) <= boost::multiprecision::ldexp(BigFloat(1), -53));
}

TEST_CASE("square roots and floors") {
  CHECK(*sqrt_exact(QuadRat(Rational(9, 4))) == QuadRat(Rational(3, 2)));
  CHECK(*sqrt_exact(QuadRat(11)) == QuadRat::root(11));
  CHECK(*sqrt_exact(QuadRat(Rational(1, 11))) == QuadRat(0, Rational(1, 11), 11));
  CHECK(*sqrt_exact(QuadRat(Rational(8, 3))) == QuadRat(0, Rational(2, 3), 6));
  CHECK(*sqrt_exact(QuadRat(11, 0, 11)) == QuadRat::root(11));
  // (2 + sqrt 3)^2 = 7 + 4 sqrt 3
  CHECK(*sqrt_exact(QuadRat(7, 4, 3)) == QuadRat(2, 1, 3));
  CHECK_FALSE(sqrt_exact(QuadRat(2) + QuadRat::root(3)).has_value());
  CHECK_FALSE(sqrt_exact(QuadRat(2, 0, 3)).has_value());
  CHECK_FALSE(sqrt_exact(QuadRat(-4)).has_value());
  CHECK(floor_exact(QuadRat::root(11)) == 3);
  CHECK(floor_exact(-QuadRat::root(11)) == -4);
  CHECK(floor_exact(QuadRat(Rational(-1, 2))) == -1);
  CHECK(floor_exact(Real(2.5)) == 2);
}

TEST_CASE("text form") {
  CHECK(to_string(q11(0, 1, 1, 11)) == "0+1/11*sqrt(11)");
  CHECK(to_string(q11(0, 1, -1, 11)) == "0+-1/11*sqrt(11)");
  CHECK(to_string(QuadRat(Rational(-5, 3))) == "-5/3");
  CHECK(parse_quadrat("5/3+-2*sqrt(11)") == q11(5, 3, -2, 1));
  CHECK(parse_quadrat("-7") == QuadRat(-7));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS(parse_quadrat("1 + sqrt(11)"));
  CHECK_THROWS(parse_quadrat("1+2*sqrt(4)"));
  CHECK_THROWS(parse_quadrat("abc"));
  CHECK_THROWS(parse_quadrat("1/0"));
}

TEST_CASE("random field properties") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dist(-40, 40);
  for (int i = 0; i < 300; ++i) {
    const QuadRat x(Rational(dist(rng), 1 + (rng() % 9)), Rational(dist(rng), 1 + (rng() % 9)), 11);
    const QuadRat y(Rational(dist(rng), 1 + (rng() % 9)), Rational(dist(rng), 1 + (rng() % 9)), 11);
    if (!x.is_zero()) CHECK(x * (QuadRat(1) / x) == QuadRat(1));
    const QuadRat p = x * y - y;
    CHECK(p.a().get_den() > 0);
    CHECK(gcd(p.a().get_num(), p.a().get_den()) == 1);
    CHECK(sgn(p) == float_sign(p));
    CHECK(parse_quadrat(to_string(p)) == p);
  }
}
