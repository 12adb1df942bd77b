#pragma once

#include "dfdom/exactnum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dfd {

/// re + i*im with both parts in one real quadratic field.
struct Complex {
  QuadRat re, im;

  Complex() = default;
  Complex(QuadRat r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Complex(long r) : re(r) {}                // NOLINT(google-explicit-constructor)
  Complex(QuadRat r, QuadRat i) : re(std::move(r)), im(std::move(i)) {}
  static Complex i() { return Complex(0, 1); }

  Complex conj() const { return Complex(re, -im); }
  QuadRat norm() const { return re * re + im * im; }  // |z|^2
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  Complex operator-() const { return Complex(-re, -im); }
  friend Complex operator+(const Complex& x, const Complex& y) { return Complex(x.re + y.re, x.im + y.im); }
  friend Complex operator-(const Complex& x, const Complex& y) { return Complex(x.re - y.re, x.im - y.im); }
  friend Complex operator*(const Complex& x, const Complex& y) {
    return Complex(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
  }
  friend Complex operator/(const Complex& x, const Complex& y);
  friend bool operator==(const Complex& x, const Complex& y) { return x.re == y.re && x.im == y.im; }
};

std::string to_string(const Complex& z);

/// Element of PSL2(C); the constructor rejects det != 1.
class CMoebius {
 public:
  CMoebius() : a_(1), b_(0), c_(0), d_(1) {}
  CMoebius(Complex a, Complex b, Complex c, Complex d);
  static CMoebius translation(const Complex& w) { return CMoebius(1, w, 0, 1); }

  const Complex& a() const { return a_; }
  const Complex& b() const { return b_; }
  const Complex& c() const { return c_; }
  const Complex& d() const { return d_; }
  Complex trace() const { return a_ + d_; }
  CMoebius inverse() const { return CMoebius(d_, -b_, -c_, a_); }
  bool fixes_infinity() const { return c_.is_zero(); }
  /// z -> z + w with w = b/d.
  std::optional<Complex> translation_vector() const;

  friend CMoebius operator*(const CMoebius& g, const CMoebius& h);
  /// Equality in PSL2(C), i.e. up to sign.
  friend bool operator==(const CMoebius& g, const CMoebius& h);

 private:
  friend class AntiMoebius3;
  struct Unchecked {};
  CMoebius(Complex a, Complex b, Complex c, Complex d, Unchecked)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}
  Complex a_, b_, c_, d_;
};

std::string to_string(const CMoebius& g);

/// z -> (a conj(z) + b) / (c conj(z) + d), normalized to det -1.
class AntiMoebius3 {
 public:
  /// Reflection in the vertical plane Re(conj(n) z) = offset; |n| = 1.
  static AntiMoebius3 plane(const Complex& normal, const QuadRat& offset);
  /// Reflection in the hemisphere |z - center| = radius.
  static AntiMoebius3 sphere(const Complex& center, const QuadRat& radius);

  const Complex& a() const { return a_; }
  const Complex& b() const { return b_; }
  const Complex& c() const { return c_; }
  const Complex& d() const { return d_; }

  /// Composition (this after h), an orientation-preserving map.
  CMoebius then_after(const AntiMoebius3& h) const;

 private:
  AntiMoebius3(Complex a, Complex b, Complex c, Complex d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}
  Complex a_, b_, c_, d_;
};

struct IsometricSphere {
  Complex center;
  QuadRat radius_sq;

  /// Radius when it lies in the field.
  std::optional<QuadRat> radius() const { return sqrt_exact(radius_sq); }
  Real radius_real() const;
};

/// Throws std::invalid_argument when c = 0.
IsometricSphere isometric_sphere(const CMoebius& g);

/// Vertical plane above the line alpha x + beta y = delta.
struct VerticalPlane {
  QuadRat alpha, beta, delta;
  bool contains(const Complex& z) const { return alpha * z.re + beta * z.im == delta; }
  /// Same plane, possibly with a rescaled equation.
  bool same_as(const VerticalPlane& o) const;
};

/// The vertical plane R_g bisecting S_g and S_{g^-1}. For real trace this is
/// the plane with g = (reflection in R_g) o (reflection in S_g), which stays
/// defined when the two spheres coincide. Throws when c = 0, or when the
/// spheres coincide and the trace is not real.
VerticalPlane bisector_plane(const CMoebius& g);

/// Dihedral angle of the region outside both spheres. Tangent spheres give 0;
/// disjoint, nested or concentric spheres throw std::domain_error.
Real dihedral_angle(const IsometricSphere& s1, const IsometricSphere& s2);
/// Exact test for dihedral angle pi/2.
bool meet_orthogonally(const IsometricSphere& s1, const IsometricSphere& s2);

class CuspRankError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DFCriterion {
  bool pass = false;
  std::optional<Complex> axis;  // base point of the common vertical axis
  std::string reason;
  std::vector<Complex> lattice;  // reduced basis of the translation lattice
  std::vector<VerticalPlane> planes;
};

/// Necessary condition for a DF domain: every generator has real trace and
/// the planes R_g meet in one vertical axis whose foot is a Voronoi centre of
/// the translation lattice containing every sphere centre. A pass means only
/// "consistent with a DF domain". Throws CuspRankError unless the generators
/// include two independent translations.
DFCriterion df_criterion(const std::vector<CMoebius>& gens);

/// Face of a polyhedron in upper half-space.
struct Face {
  enum class Kind { plane, sphere } kind = Kind::plane;
  Complex normal;   // plane: unit outward normal; Q lies where Re(conj(n) z) <= offset
  QuadRat offset;
  Complex center;   // sphere: Q lies outside
  QuadRat radius;

  static Face vertical(Complex n, QuadRat off) { return Face{Kind::plane, std::move(n), std::move(off), {}, {}}; }
  static Face hemisphere(Complex c, QuadRat r) { return Face{Kind::sphere, {}, {}, std::move(c), std::move(r)}; }
  AntiMoebius3 reflection() const;
  bool operator==(const Face& o) const = default;
};

struct DoubledPolyhedron {
  std::vector<CMoebius> generators;  // tau_L tau_i in face order, i != L
  /// Point of the open face L above every sphere and inside every other plane.
  std::optional<std::pair<Complex, QuadRat>> dirichlet_center;  // (foot, height^2)
};

/// Index-2 rotation subgroup of the reflection group of Q. Throws
/// std::invalid_argument when face L is not a vertical plane, or when another
/// face equals L (the identity would appear among the generators).
DoubledPolyhedron double_reflection_polyhedron(const std::vector<Face>& faces, int L);

}  // namespace dfd
