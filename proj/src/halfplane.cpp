#include "dfdom/halfplane.hpp"

#include <sstream>
#include <stdexcept>

namespace dfd {

namespace bm = boost::multiprecision;

template <class F>
Real Point<F>::real_y() const {
  if (at_infinity) throw std::domain_error("real_y of the point at infinity");
  const Real y2 = to_real(Y);
  return y2 <= 0 ? Real(0) : Real(bm::sqrt(y2));
}

template <class F>
bool operator==(const Point<F>& p, const Point<F>& q) {
  if (p.at_infinity || q.at_infinity) return p.at_infinity == q.at_infinity;
  return sgn(F(p.x - q.x)) == 0 && sgn(F(p.Y - q.Y)) == 0;
}

template <class F>
std::string to_string(const Point<F>& p) {
  if (p.at_infinity) return "inf";
  if (sgn(p.Y) == 0) return to_string(p.x);
  return to_string(p.x) + " + i*sqrt(" + to_string(p.Y) + ")";
}

std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::identity: return "identity";
    case MapKind::elliptic: return "elliptic";
    case MapKind::parabolic: return "parabolic";
    case MapKind::hyperbolic: return "hyperbolic";
  }
  return "?";
}

template <class F>
Moebius<F>::Moebius(F a, F b, F c, F d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const F det = a_ * d_ - b_ * c_;
  if (sgn(det) <= 0) throw std::invalid_argument("Moebius: determinant must be positive");
  if (sgn(F(det - F(1))) != 0) {
    long field = 0;
    for (const F* e : {&a_, &b_, &c_, &d_}) {
      if (field_of(*e) != 0) field = field_of(*e);
    }
    const auto root = sqrt_exact(in_field(det, field));
    if (!root) throw std::invalid_argument("Moebius: determinant is not a square in the field");
    a_ /= *root;
    b_ /= *root;
    c_ /= *root;
    d_ /= *root;
  }
  fix_sign();
}

template <class F>
void Moebius<F>::fix_sign() {
  for (const F* e : {&c_, &d_, &a_, &b_}) {
    const int s = sgn(*e);
    if (s == 0) continue;
    if (s < 0) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    return;
  }
}

template <class F>
bool Moebius<F>::is_identity() const {
  return sgn(b_) == 0 && sgn(c_) == 0 && sgn(F(a_ - d_)) == 0;
}

template <class F>
Moebius<F> Moebius<F>::inverse() const {
  Moebius r(Normalized{}, d_, -b_, -c_, a_);
  r.fix_sign();
  return r;
}

template <class F>
Moebius<F> Moebius<F>::pow(long k) const {
  Moebius base = k < 0 ? inverse() : *this;
  unsigned long n = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  Moebius acc;
  while (n != 0) {
    if (n & 1UL) acc = acc * base;
    n >>= 1U;
    if (n != 0) base = base * base;
  }
  return acc;
}

template <class F>
Point<F> Moebius<F>::apply(const Point<F>& z) const {
  if (z.at_infinity) {
    if (sgn(c_) == 0) return Point<F>::infinity();
    return Point<F>::boundary(a_ / c_);
  }
  const F mod2 = z.x * z.x + z.Y;
  const F n = c_ * c_ * mod2 + F(2) * c_ * d_ * z.x + d_ * d_;
  if (sgn(n) == 0) return Point<F>::infinity();
  const F num = a_ * c_ * mod2 + (a_ * d_ + b_ * c_) * z.x + b_ * d_;
  return Point<F>{num / n, z.Y / (n * n), false};
}

template <class F>
Classification<F> Moebius<F>::classify() const {
  Classification<F> out;
  out.trace = trace();
  if (is_identity()) return out;
  const F t2 = out.trace * out.trace;
  const int s = sgn(F(t2 - F(4)));
  if (s > 0) {
    out.kind = MapKind::hyperbolic;
    return out;
  }
  if (s == 0) {
    out.kind = MapKind::parabolic;
    return out;
  }
  out.kind = MapKind::elliptic;
  // tr = 2cos(pi j/k); the four orders with rational tr^2 are decided directly
  for (const auto& [sq, k] : {std::pair<long, long>{0, 2}, {1, 3}, {2, 4}, {3, 6}}) {
    if (sgn(F(t2 - F(sq))) == 0) {
      out.order = k;
      return out;
    }
  }
  const Real theta = bm::acos(bm::abs(to_real(out.trace)) / 2) / real_pi();
  for (long k = 2; k <= 1000; ++k) {
    const Real j = theta * k;
    if (bm::abs(j - bm::round(j)) < Real(1e-20)) {
      if (pow(k).is_identity()) out.order = k;
      break;
    }
  }
  return out;
}

template <class F>
std::string to_string(const Moebius<F>& g) {
  return "[[" + to_string(g.a()) + ", " + to_string(g.b()) + "], [" + to_string(g.c()) + ", " +
         to_string(g.d()) + "]]";
}

template <class F>
AntiMoebius<F>::AntiMoebius(F a, F b, F c, F d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (sgn(det()) >= 0) throw std::invalid_argument("AntiMoebius: determinant must be negative");
}

template <class F>
AntiMoebius<F> AntiMoebius<F>::inverse() const {
  // conj of the adjugate; entries are real so it is the adjugate itself
  return AntiMoebius(d_, -b_, -c_, a_);
}

template <class F>
Point<F> AntiMoebius<F>::apply(const Point<F>& z) const {
  if (z.at_infinity) {
    if (sgn(c_) == 0) return Point<F>::infinity();
    return Point<F>::boundary(a_ / c_);
  }
  const F mod2 = z.x * z.x + z.Y;
  const F n = c_ * c_ * mod2 + F(2) * c_ * d_ * z.x + d_ * d_;
  if (sgn(n) == 0) return Point<F>::infinity();
  const F num = a_ * c_ * mod2 + (a_ * d_ + b_ * c_) * z.x + b_ * d_;
  const F dt = det();
  return Point<F>{num / n, dt * dt * z.Y / (n * n), false};
}

template <class F>
Moebius<F> operator*(const AntiMoebius<F>& s, const AntiMoebius<F>& t) {
  return Moebius<F>(s.a() * t.a() + s.b() * t.c(), s.a() * t.b() + s.b() * t.d(), s.c() * t.a() + s.d() * t.c(),
                    s.c() * t.b() + s.d() * t.d());
}

template <class F>
AntiMoebius<F> operator*(const AntiMoebius<F>& s, const Moebius<F>& t) {
  return AntiMoebius<F>(s.a() * t.a() + s.b() * t.c(), s.a() * t.b() + s.b() * t.d(),
                        s.c() * t.a() + s.d() * t.c(), s.c() * t.b() + s.d() * t.d());
}

template <class F>
AntiMoebius<F> operator*(const Moebius<F>& s, const AntiMoebius<F>& t) {
  return AntiMoebius<F>(s.a() * t.a() + s.b() * t.c(), s.a() * t.b() + s.b() * t.d(),
                        s.c() * t.a() + s.d() * t.c(), s.c() * t.b() + s.d() * t.d());
}

template <class F>
int HalfPlane<F>::side(const Point<F>& p) const {
  if (p.at_infinity) return sgn(ct);
  return sgn(value(p));
}

template <class F>
HalfPlane<F> HalfPlane<F>::normalized() const {
  if (sgn(ct) != 0) return HalfPlane{cs / ct, F(1), c0 / ct};
  const F k = sgn(cs) > 0 ? cs : F(-cs);
  return HalfPlane{cs / k, F(0), c0 / k};
}

template <class F>
Geodesic<F> Geodesic<F>::of(const HalfPlane<F>& h) {
  if (h.is_vertical()) {
    if (sgn(h.cs) == 0) throw std::invalid_argument("degenerate half-plane");
    return vertical(F(-h.c0 / h.cs));
  }
  F c = -h.cs / (F(2) * h.ct);
  F r2 = c * c - h.c0 / h.ct;
  if (sgn(r2) <= 0) throw std::invalid_argument("half-plane bounded by an empty circle");
  return semicircle(std::move(c), std::move(r2));
}

template <class F>
HalfPlane<F> Geodesic<F>::outer() const {
  if (is_vertical()) return HalfPlane<F>{F(1), F(0), F(-x)};
  return HalfPlane<F>{F(-2) * center, F(1), center * center - rho};
}

template <class F>
std::string to_string(const Geodesic<F>& g) {
  if (g.is_vertical()) return "x = " + to_string(g.x);
  return "|z - " + to_string(g.center) + "|^2 = " + to_string(g.rho);
}

template <class F>
IsometricCircle<F> isometric_circle(const Moebius<F>& g) {
  if (sgn(g.c()) == 0) throw std::domain_error("parabolic-or-identity at infinity, no isometric circle");
  return IsometricCircle<F>{F(-g.d() / g.c()), F(F(1) / abs(g.c()))};
}

template <class F>
AntiMoebius<F> reflection_in(const Geodesic<F>& geo) {
  if (geo.is_vertical()) return AntiMoebius<F>(F(-1), F(2) * geo.x, F(0), F(1));
  return AntiMoebius<F>(geo.center, geo.rho - geo.center * geo.center, F(1), F(-geo.center));
}

template <class F>
Real distance(const Point<F>& z, const Point<F>& w) {
  if (z.is_ideal() || w.is_ideal()) throw std::domain_error("distance: boundary point");
  const Real yz = z.real_y();
  const Real yw = w.real_y();
  const Real dx = z.real_x() - w.real_x();
  const Real dy = yz - yw;
  const Real c = 1 + (dx * dx + dy * dy) / (2 * yz * yw);
  return bm::acosh(c < 1 ? Real(1) : c);
}

template <class F>
std::optional<Point<F>> intersect(const HalfPlane<F>& g, const HalfPlane<F>& h) {
  const F det = g.cs * h.ct - g.ct * h.cs;
  if (sgn(det) == 0) {
    if (g.is_vertical() && h.is_vertical()) return Point<F>::infinity();
    return std::nullopt;
  }
  // cs*s + ct*t = -c0 for both forms
  const F s = (-g.c0 * h.ct + h.c0 * g.ct) / det;
  const F t = (-g.cs * h.c0 + h.cs * g.c0) / det;
  F Y = t - s * s;
  if (sgn(Y) < 0) return std::nullopt;
  if (sgn(Y) == 0) Y = F(0);
  return Point<F>{s, Y, false};
}

template <class F>
Real interior_angle(const HalfPlane<F>& g, const HalfPlane<F>& h, const Point<F>& p) {
  if (p.is_ideal()) return Real(0);
  // inward normals are the gradients of the two forms at p
  const Real x = p.real_x();
  const Real y = p.real_y();
  const Real g1 = to_real(g.cs) + 2 * to_real(g.ct) * x;
  const Real g2 = 2 * to_real(g.ct) * y;
  const Real h1 = to_real(h.cs) + 2 * to_real(h.ct) * x;
  const Real h2 = 2 * to_real(h.ct) * y;
  const Real between = bm::atan2(bm::abs(g1 * h2 - g2 * h1), g1 * h1 + g2 * h2);
  return real_pi() - between;
}

#define DFD_INSTANTIATE(F)                                                                    \
  template struct Point<F>;                                                                   \
  template bool operator==(const Point<F>&, const Point<F>&);                                 \
  template std::string to_string(const Point<F>&);                                            \
  template class Moebius<F>;                                                                  \
  template std::string to_string(const Moebius<F>&);                                          \
  template class AntiMoebius<F>;                                                              \
  template Moebius<F> operator*(const AntiMoebius<F>&, const AntiMoebius<F>&);                \
  template AntiMoebius<F> operator*(const AntiMoebius<F>&, const Moebius<F>&);                \
  template AntiMoebius<F> operator*(const Moebius<F>&, const AntiMoebius<F>&);                \
  template struct HalfPlane<F>;                                                               \
  template struct Geodesic<F>;                                                                \
  template std::string to_string(const Geodesic<F>&);                                         \
  template IsometricCircle<F> isometric_circle(const Moebius<F>&);                            \
  template AntiMoebius<F> reflection_in(const Geodesic<F>&);                                  \
  template Real distance(const Point<F>&, const Point<F>&);                                   \
  template std::optional<Point<F>> intersect(const HalfPlane<F>&, const HalfPlane<F>&);       \
  template Real interior_angle(const HalfPlane<F>&, const HalfPlane<F>&, const Point<F>&);

DFD_INSTANTIATE(QuadRat)
DFD_INSTANTIATE(Real)

}  // namespace dfd
