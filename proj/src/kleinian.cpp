#include "dfdom/kleinian.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace dfd {

Complex operator/(const Complex& x, const Complex& y) {
  const QuadRat n = y.norm();
  if (n.is_zero()) throw DivisionByZero("complex division by zero");
  const Complex t = x * y.conj();
  return Complex(t.re / n, t.im / n);
}

std::string to_string(const Complex& z) {
  if (z.im.is_zero()) return to_string(z.re);
  const QuadRat m = abs(z.im);
  const std::string im = m.is_rational() ? to_string(m) : "(" + to_string(m) + ")";
  return to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + im + "i";
}

CMoebius::CMoebius(Complex a, Complex b, Complex c, Complex d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (!(a_ * d_ - b_ * c_ == Complex(1))) throw std::invalid_argument("matrix does not have determinant 1");
}

std::optional<Complex> CMoebius::translation_vector() const {
  if (!c_.is_zero() || !(a_ == d_)) return std::nullopt;
  return b_ / d_;
}

CMoebius operator*(const CMoebius& g, const CMoebius& h) {
  return CMoebius(g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_, g.c_ * h.a_ + g.d_ * h.c_,
                  g.c_ * h.b_ + g.d_ * h.d_, CMoebius::Unchecked{});
}

bool operator==(const CMoebius& g, const CMoebius& h) {
  const bool same = g.a_ == h.a_ && g.b_ == h.b_ && g.c_ == h.c_ && g.d_ == h.d_;
  return same || (g.a_ == -h.a_ && g.b_ == -h.b_ && g.c_ == -h.c_ && g.d_ == -h.d_);
}

std::string to_string(const CMoebius& g) {
  return "(" + to_string(g.a()) + ", " + to_string(g.b()) + "; " + to_string(g.c()) + ", " + to_string(g.d()) + ")";
}

AntiMoebius3 AntiMoebius3::plane(const Complex& normal, const QuadRat& offset) {
  if (!(normal.norm() == QuadRat(1))) throw std::invalid_argument("plane normal must have length 1");
  // z -> -n^2 conj(z) + 2 offset n, scaled by conj(n)
  return AntiMoebius3(-normal, Complex(offset * QuadRat(2)), 0, normal.conj());
}

AntiMoebius3 AntiMoebius3::sphere(const Complex& center, const QuadRat& radius) {
  if (sgn(radius) <= 0) throw std::invalid_argument("sphere radius must be positive");
  const Complex r(radius);
  return AntiMoebius3(center / r, Complex(radius * radius - center.norm()) / r, Complex(1) / r, -center.conj() / r);
}

CMoebius AntiMoebius3::then_after(const AntiMoebius3& h) const {
  // this(h(z)) = M conj(H) applied to z
  const Complex ha = h.a_.conj(), hb = h.b_.conj(), hc = h.c_.conj(), hd = h.d_.conj();
  return CMoebius(a_ * ha + b_ * hc, a_ * hb + b_ * hd, c_ * ha + d_ * hc, c_ * hb + d_ * hd);
}

Real IsometricSphere::radius_real() const { return boost::multiprecision::sqrt(to_real(radius_sq)); }

IsometricSphere isometric_sphere(const CMoebius& g) {
  if (g.c().is_zero()) throw std::invalid_argument("no isometric sphere: c = 0");
  return IsometricSphere{-g.d() / g.c(), QuadRat(1) / g.c().norm()};
}

bool VerticalPlane::same_as(const VerticalPlane& o) const {
  return alpha * o.beta == beta * o.alpha && alpha * o.delta == delta * o.alpha && beta * o.delta == delta * o.beta;
}

VerticalPlane bisector_plane(const CMoebius& g) {
  if (g.c().is_zero()) throw std::invalid_argument("no isometric sphere: c = 0");
  const Complex& c = g.c();
  if (g.trace().is_real()) {
    // Re(c z) = Re(a - d) / 2
    return VerticalPlane{c.re, -c.im, (g.a() - g.d()).re / QuadRat(2)};
  }
  const Complex p = -g.d() / c, q = g.a() / c;
  const Complex v = q - p, m = (p + q) / Complex(2);
  return VerticalPlane{v.re, v.im, m.re * v.re + m.im * v.im};
}

namespace {

// N = |p - q|^2 - r1^2 - r2^2; the angle has cos = N / (2 r1 r2)
QuadRat cosine_numerator(const IsometricSphere& s1, const IsometricSphere& s2) {
  return (s1.center - s2.center).norm() - s1.radius_sq - s2.radius_sq;
}

}  // namespace

Real dihedral_angle(const IsometricSphere& s1, const IsometricSphere& s2) {
  const QuadRat n = cosine_numerator(s1, s2);
  const QuadRat bound = QuadRat(4) * s1.radius_sq * s2.radius_sq;
  const int cmp = sgn(n * n - bound);
  if (cmp > 0) throw std::domain_error(sgn(n) > 0 ? "spheres are disjoint" : "one sphere lies inside the other");
  if (cmp == 0) {
    if (sgn(n) < 0) throw std::domain_error("spheres are concentric or internally tangent");
    return Real(0);
  }
  if (n.is_zero()) return real_pi() / 2;
  const Real cosine = to_real(n) / (2 * boost::multiprecision::sqrt(to_real(s1.radius_sq * s2.radius_sq)));
  return boost::multiprecision::acos(cosine);
}

bool meet_orthogonally(const IsometricSphere& s1, const IsometricSphere& s2) {
  return cosine_numerator(s1, s2).is_zero();
}

namespace {

QuadRat dot(const Complex& x, const Complex& y) { return x.re * y.re + x.im * y.im; }
QuadRat cross(const Complex& x, const Complex& y) { return x.re * y.im - x.im * y.re; }

// Lagrange-Gauss reduction
std::pair<Complex, Complex> reduce_basis(Complex u, Complex v) {
  for (;;) {
    if (u.norm() > v.norm()) std::swap(u, v);
    const QuadRat ratio = dot(u, v) / u.norm();
    const Integer mu = floor_exact(ratio + QuadRat(Rational(1, 2)));
    if (mu == 0) return {u, v};
    v = v - Complex(QuadRat(Rational(mu))) * u;
  }
}

bool in_lattice(const Complex& t, const Complex& u, const Complex& v) {
  const QuadRat det = cross(u, v);
  return (cross(t, v) / det).is_integer() && (cross(u, t) / det).is_integer();
}

struct Interval {
  std::optional<QuadRat> lo, hi;
  bool empty = false;
  // lo <= s*e + k <= hi style constraint |k - s e| <= w
  void constrain(const QuadRat& k, const QuadRat& e, const QuadRat& w) {
    if (e.is_zero()) {
      if (abs(k) > w) empty = true;
      return;
    }
    QuadRat a = (k - w) / e, b = (k + w) / e;
    if (a > b) std::swap(a, b);
    if (!lo || a > *lo) lo = a;
    if (!hi || b < *hi) hi = b;
    if (*lo > *hi) empty = true;
  }
};

}  // namespace

DFCriterion df_criterion(const std::vector<CMoebius>& gens) {
  DFCriterion out;
  std::vector<Complex> translations;
  std::vector<std::size_t> spherical;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (auto w = gens[k].translation_vector()) {
      if (!w->is_zero()) translations.push_back(*w);
    } else if (!gens[k].fixes_infinity()) {
      spherical.push_back(k);
    }
  }
  std::optional<std::pair<Complex, Complex>> basis;
  for (std::size_t i = 0; i < translations.size() && !basis; ++i) {
    for (std::size_t j = i + 1; j < translations.size() && !basis; ++j) {
      if (!cross(translations[i], translations[j]).is_zero()) basis = reduce_basis(translations[i], translations[j]);
    }
  }
  if (!basis) throw CuspRankError("the generators need two independent translations");
  const auto [u, v] = *basis;
  for (const Complex& t : translations) {
    if (!in_lattice(t, u, v)) throw CuspRankError("translation " + to_string(t) + " is off the lattice of the first two");
  }
  out.lattice = {u, v};

  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (!gens[k].trace().is_real()) {
      out.reason = "generator " + std::to_string(k) + " has non-real trace " + to_string(gens[k].trace());
      return out;
    }
  }
  for (std::size_t k : spherical) out.planes.push_back(bisector_plane(gens[k]));

  std::vector<Complex> centers;
  for (std::size_t k : spherical) {
    centers.push_back(-gens[k].d() / gens[k].c());
    centers.push_back(gens[k].a() / gens[k].c());
  }
  const std::vector<Complex> relevant = {u, v, u + v, u - v};

  // foot of the axis: P0 + s*dir, s free when dir != 0
  Complex p0(0), dir(0);
  if (!out.planes.empty()) {
    const VerticalPlane& first = out.planes.front();
    const VerticalPlane* second = nullptr;
    for (const VerticalPlane& pl : out.planes) {
      if (!pl.same_as(first)) {
        second = &pl;
        break;
      }
    }
    if (second) {
      const QuadRat det = first.alpha * second->beta - first.beta * second->alpha;
      if (det.is_zero()) {
        out.reason = "planes R_g are parallel and distinct";
        return out;
      }
      p0 = Complex((first.delta * second->beta - first.beta * second->delta) / det,
                   (first.alpha * second->delta - first.delta * second->alpha) / det);
      for (const VerticalPlane& pl : out.planes) {
        if (!pl.contains(p0)) {
          out.reason = "planes R_g have no common vertical axis";
          return out;
        }
      }
    } else {
      p0 = first.alpha.is_zero() ? Complex(0, first.delta / first.beta) : Complex(first.delta / first.alpha, 0);
      dir = Complex(-first.beta, first.alpha);
    }
  }

  // every centre in the closed Voronoi cell of the lattice at the foot
  Interval s;
  for (const Complex& z : centers) {
    for (const Complex& t : relevant) {
      s.constrain(QuadRat(2) * dot(z - p0, t), QuadRat(2) * dot(dir, t), t.norm());
    }
  }
  if (s.empty) {
    out.reason = "no common axis is a Voronoi centre of the cusp lattice containing every sphere centre";
    return out;
  }
  QuadRat param(0);
  if (!dir.is_zero()) {
    if (s.lo && s.hi) param = (*s.lo + *s.hi) / QuadRat(2);
    else if (s.lo) param = *s.lo;
    else if (s.hi) param = *s.hi;
  }
  out.axis = p0 + Complex(param) * dir;
  out.pass = true;
  out.reason = "consistent with a DF domain: real traces and a common axis above " + to_string(*out.axis) +
               " (a necessary condition only)";
  return out;
}

AntiMoebius3 Face::reflection() const {
  return kind == Kind::plane ? AntiMoebius3::plane(normal, offset) : AntiMoebius3::sphere(center, radius);
}

DoubledPolyhedron double_reflection_polyhedron(const std::vector<Face>& faces, int L) {
  if (L < 0 || static_cast<std::size_t>(L) >= faces.size()) throw std::invalid_argument("face index out of range");
  const Face& wall = faces[static_cast<std::size_t>(L)];
  if (wall.kind != Face::Kind::plane) throw std::invalid_argument("face L must be a vertical plane");
  const AntiMoebius3 tau_L = wall.reflection();
  DoubledPolyhedron out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (static_cast<int>(i) == L) continue;
    const CMoebius g = tau_L.then_after(faces[i].reflection());
    if (g == CMoebius()) throw std::invalid_argument("face " + std::to_string(i) + " coincides with face L");
    out.generators.push_back(g);
  }

  // foot on L: base + s*(i n), kept strictly inside the other vertical faces
  const Complex base = Complex(wall.offset) * wall.normal;
  const Complex along = Complex::i() * wall.normal;
  std::optional<QuadRat> lo, hi;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    if (static_cast<int>(i) == L || f.kind != Face::Kind::plane) continue;
    const QuadRat e = dot(along, f.normal), k = f.offset - dot(base, f.normal);  // need s*e < k
    if (e.is_zero()) {
      if (sgn(k) <= 0) return out;
      continue;
    }
    const QuadRat bound = k / e;
    if (sgn(e) > 0) {
      if (!hi || bound < *hi) hi = bound;
    } else if (!lo || bound > *lo) {
      lo = bound;
    }
  }
  if (lo && hi && *lo >= *hi) return out;
  QuadRat s(0);
  if (lo && hi) s = (*lo + *hi) / QuadRat(2);
  else if (lo) s = *lo + QuadRat(1);
  else if (hi) s = *hi - QuadRat(1);
  const Complex foot = base + Complex(s) * along;
  QuadRat h2(0);
  for (const Face& f : faces) {
    if (f.kind != Face::Kind::sphere) continue;
    const QuadRat under = f.radius * f.radius - (foot - f.center).norm();
    if (under > h2) h2 = under;
  }
  out.dirichlet_center = std::make_pair(foot, h2 + QuadRat(1));
  return out;
}

}  // namespace dfd
