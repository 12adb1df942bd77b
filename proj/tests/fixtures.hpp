#pragma once

#include "dfdom/domains.hpp"
#include "dfdom/kleinian.hpp"

#include <vector>

namespace fx {

using dfd::QuadRat;
using dfd::Rational;
using M = dfd::Moebius<QuadRat>;

inline QuadRat r11() { return QuadRat::root(11); }
inline QuadRat q(long n, long d = 1) { return QuadRat(Rational(n, d)); }

inline M T() { return M(1, 1, 0, 1); }
inline M S() { return M(0, -1, 1, 0); }
inline M gamma2() { return M(0, -(QuadRat(1) / r11()), r11(), 0); }
inline M gamma3() { return M(r11(), q(5) / r11(), q(2) * r11(), r11()); }
inline M gamma4() { return M(10, 3, 33, 10); }
inline M gamma5() { return M(23, 8, 66, 23); }

inline std::vector<M> modular() { return {T(), S()}; }
inline std::vector<M> gamma11() { return {T(), gamma2(), gamma3(), gamma4(), gamma5()}; }
inline std::vector<M> g_intersection() {
  return {T(), M(1, 0, 11, 1), M(-2, -1, 11, 5), M(2, -1, 11, -5), gamma4(), gamma5()};
}
inline std::vector<M> ngamma0_11() {
  return {T(), gamma2(), gamma3(), M(r11(), q(-4) / r11(), q(3) * r11(), -r11()),
          M(-r11(), q(-4) / r11(), q(3) * r11(), r11())};
}

// upper half-space example: two translations, gamma0, a pairing of +-i, and a family over Gaussian integers
using dfd::CMoebius;
using dfd::Complex;
inline QuadRat r2() { return QuadRat::root(2); }
inline CMoebius k_family(const Complex& a) {
  const Complex s(r2());
  return CMoebius(s * a, s * Complex(a.norm()) - Complex(QuadRat(1) / r2()), s, s * a.conj());
}
inline std::vector<Complex> k_parameters() {
  return {Complex(1, 0), Complex(2, 0), Complex(1, 1), Complex(2, 1), Complex(0, 2), Complex(1, 2),
          Complex(2, 2), Complex(1, -1), Complex(2, -1), Complex(0, -2), Complex(1, -2), Complex(2, -2)};
}
inline std::vector<CMoebius> kleinian_example() {
  const QuadRat half_r2 = r2() / QuadRat(2);
  std::vector<CMoebius> g = {CMoebius::translation(Complex(5)), CMoebius::translation(Complex(0, 5)),
                             CMoebius(0, Complex(-half_r2), Complex(r2()), 0),
                             CMoebius(Complex(-r2()), Complex(0, half_r2), Complex(0, -r2()), Complex(-r2()))};
  for (const Complex& a : k_parameters()) g.push_back(k_family(a));
  return g;
}

// figure-8 knot group: x = (1,1;0,1), y = (1,0;-w,1), w a primitive cube root of unity; the
// longitude (1, 2 sqrt(-3); 0, 1) completes the cusp lattice, and z pairs the Ford spheres at 0 and -sqrt(-3)
inline QuadRat r3() { return QuadRat::root(3); }
inline Complex omega() { return Complex(q(-1, 2), r3() / QuadRat(2)); }
inline std::vector<CMoebius> figure8() {
  const Complex w = omega();
  return {CMoebius::translation(Complex(1)), CMoebius::translation(Complex(0, QuadRat(2) * r3())),
          CMoebius(1, 0, -w, 1), CMoebius(0, -w, w.conj(), Complex(q(3, 2), -r3() / QuadRat(2)))};
}

}  // namespace fx
