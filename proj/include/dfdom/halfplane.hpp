#pragma once

#include "dfdom/exactnum.hpp"

#include <optional>
#include <string>

namespace dfd {

/// Point of the closed upper half-plane stored as (x, Y) with Y = y^2, so
/// Moebius images and geodesic intersections stay inside the base field.
template <class F>
struct Point {
  F x{};
  F Y{};
  bool at_infinity = false;

  static Point infinity() {
    Point p;
    p.at_infinity = true;
    return p;
  }
  static Point boundary(F x) { return Point{std::move(x), F(0), false}; }
  static Point interior(F x, const F& y) { return Point{std::move(x), y * y, false}; }

  bool is_ideal() const { return at_infinity || sgn(Y) == 0; }
  Real real_x() const { return to_real(x); }
  Real real_y() const;
};

template <class F>
bool operator==(const Point<F>& p, const Point<F>& q);

template <class F>
std::string to_string(const Point<F>& p);

enum class MapKind { identity, elliptic, parabolic, hyperbolic };

template <class F>
struct Classification {
  MapKind kind = MapKind::identity;
  F trace{};
  /// rotation order of an elliptic element when it could be decided
  std::optional<long> order;
};

std::string to_string(MapKind k);

/// Element of PSL2 over F. Entries are scaled to det 1 and the sign is fixed
/// so that the first nonzero entry among (c, d, a, b) is positive.
template <class F>
class Moebius {
 public:
  Moebius() : a_(1), b_(0), c_(0), d_(1) {}
  /// Throws std::invalid_argument unless det > 0 is a square in the field.
  Moebius(F a, F b, F c, F d);

  static Moebius identity() { return Moebius(); }
  static Moebius translation(const F& w) { return Moebius(F(1), w, F(0), F(1)); }

  const F& a() const { return a_; }
  const F& b() const { return b_; }
  const F& c() const { return c_; }
  const F& d() const { return d_; }
  F trace() const { return a_ + d_; }

  bool is_identity() const;
  Moebius inverse() const;
  Moebius pow(long k) const;
  Point<F> apply(const Point<F>& z) const;
  Classification<F> classify() const;

  friend Moebius operator*(const Moebius& g, const Moebius& h) {
    return Moebius(g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_, g.c_ * h.a_ + g.d_ * h.c_,
                   g.c_ * h.b_ + g.d_ * h.d_);
  }
  friend bool operator==(const Moebius& g, const Moebius& h) {
    return sgn(F(g.a_ - h.a_)) == 0 && sgn(F(g.b_ - h.b_)) == 0 && sgn(F(g.c_ - h.c_)) == 0 &&
           sgn(F(g.d_ - h.d_)) == 0;
  }

 private:
  struct Normalized {};
  Moebius(Normalized, F a, F b, F c, F d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}
  void fix_sign();

  F a_, b_, c_, d_;
};

template <class F>
std::string to_string(const Moebius<F>& g);

/// Orientation-reversing isometry z -> (a conj(z) + b)/(c conj(z) + d). The
/// matrix is kept projectively with det < 0 (a reflection in a vertical line
/// has det -1 and cannot be rescaled to +1 over the reals).
template <class F>
class AntiMoebius {
 public:
  AntiMoebius(F a, F b, F c, F d);

  const F& a() const { return a_; }
  const F& b() const { return b_; }
  const F& c() const { return c_; }
  const F& d() const { return d_; }
  F det() const { return a_ * d_ - b_ * c_; }

  AntiMoebius inverse() const;
  Point<F> apply(const Point<F>& z) const;

  friend bool operator==(const AntiMoebius& g, const AntiMoebius& h) {
    // proportional matrices: all 2x2 minors of the stacked entry vectors vanish
    const F* u[4] = {&g.a_, &g.b_, &g.c_, &g.d_};
    const F* v[4] = {&h.a_, &h.b_, &h.c_, &h.d_};
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (sgn(F(*u[i] * *v[j] - *u[j] * *v[i])) != 0) return false;
      }
    }
    return true;
  }

 private:
  F a_, b_, c_, d_;
};

template <class F>
Moebius<F> operator*(const AntiMoebius<F>& s, const AntiMoebius<F>& t);
template <class F>
AntiMoebius<F> operator*(const AntiMoebius<F>& s, const Moebius<F>& g);
template <class F>
AntiMoebius<F> operator*(const Moebius<F>& g, const AntiMoebius<F>& s);

/// Linear form cs*x + ct*(x^2 + y^2) + c0. Every geodesic is the zero set of
/// such a form; the closed half-plane is where it is >= 0.
template <class F>
struct HalfPlane {
  F cs{}, ct{}, c0{};

  F value(const Point<F>& p) const { return cs * p.x + ct * (p.x * p.x + p.Y) + c0; }
  /// Sign at p; for p = infinity the limit along vertical rays (0 for a line).
  int side(const Point<F>& p) const;
  HalfPlane flipped() const { return HalfPlane{-cs, -ct, -c0}; }
  /// Scaled so that ct = 1, or cs = +-1 for vertical lines.
  HalfPlane normalized() const;
  bool is_vertical() const { return sgn(ct) == 0; }
};

template <class F>
struct Geodesic {
  enum class Kind { vertical, semicircle };
  Kind kind = Kind::vertical;
  F x{};       // vertical line x = x
  F center{};  // semicircle centre on the real axis
  F rho{};     // squared radius

  static Geodesic vertical(F x0) { return Geodesic{Kind::vertical, std::move(x0), F(0), F(0)}; }
  static Geodesic semicircle(F c, F r2) { return Geodesic{Kind::semicircle, F(0), std::move(c), std::move(r2)}; }
  static Geodesic of(const HalfPlane<F>& h);

  bool is_vertical() const { return kind == Kind::vertical; }
  /// Half-plane to the right of a vertical line, or outside a semicircle.
  HalfPlane<F> outer() const;
  bool contains(const Point<F>& p) const { return outer().side(p) == 0; }

  friend bool operator==(const Geodesic& g, const Geodesic& h) {
    if (g.kind != h.kind) return false;
    if (g.is_vertical()) return sgn(F(g.x - h.x)) == 0;
    return sgn(F(g.center - h.center)) == 0 && sgn(F(g.rho - h.rho)) == 0;
  }
};

template <class F>
std::string to_string(const Geodesic<F>& g);

template <class F>
struct IsometricCircle {
  F center;
  F radius;
  Geodesic<F> geodesic() const { return Geodesic<F>::semicircle(center, radius * radius); }
};

/// Throws std::domain_error when c = 0.
template <class F>
IsometricCircle<F> isometric_circle(const Moebius<F>& g);

template <class F>
AntiMoebius<F> reflection_in(const Geodesic<F>& geo);

/// Hyperbolic distance between interior points; throws on boundary points.
template <class F>
Real distance(const Point<F>& z, const Point<F>& w);

/// Point where two geodesics cross (or meet on the boundary), if any.
template <class F>
std::optional<Point<F>> intersect(const HalfPlane<F>& g, const HalfPlane<F>& h);

/// Interior angle at p of the region bounded by two half-planes through p.
template <class F>
Real interior_angle(const HalfPlane<F>& g, const HalfPlane<F>& h, const Point<F>& p);

}  // namespace dfd
