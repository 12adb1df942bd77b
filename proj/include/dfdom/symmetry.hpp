#pragma once

#include "dfdom/domains.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dfd {

/// A side whose pairing does not send it to its mirror image.
struct MirrorViolation {
  int side = -1;
  int partner = -1;
  int mirror = -1;  // -1 when the mirror image is not a side at all
  bool involution = false;
  bool adjacent = false;
};

template <class F>
struct MirrorReport {
  bool has_axis = false;
  Geodesic<F> axis;
  bool pairing_symmetric = false;
  // axis inside the domain: the open geodesic segment between these points
  std::optional<Point<F>> center_low, center_high;
  std::vector<MirrorViolation> violations;
  std::string why;  // first failure, empty when symmetric
};

/// Mirror symmetry of a Ford domain about x = x0 + w/2.
template <class F>
MirrorReport<F> df_check(const FundamentalDomain<F>& dom);

/// Same test about an arbitrary geodesic axis.
template <class F>
MirrorReport<F> mirror_check(const FundamentalDomain<F>& dom, const Geodesic<F>& axis);

/// Geodesic through two interior points.
template <class F>
Geodesic<F> geodesic_through(const Point<F>& p, const Point<F>& q);

/// Dirichlet domains at two centres; the axis is the geodesic through them.
template <class F>
MirrorReport<F> double_dirichlet_check(const std::vector<Moebius<F>>& gens, const Point<F>& z1, const Point<F>& z2,
                                       int depth);

/// Candidate symmetry axes read off a domain: the strip bisector of a Ford
/// domain, vertical bisectors of equal-height paired vertices, and lines
/// through pairs of single-vertex elliptic cycles.
template <class F>
std::vector<Geodesic<F>> axis_candidates(const FundamentalDomain<F>& dom);

template <class F>
struct ReflectionPolygon {
  std::vector<HalfPlane<F>> sides;  // Q is where all are >= 0; sides[0] is the axis
  std::vector<Point<F>> vertices;   // vertex i starts side i
  std::vector<long> angle_k;        // angle pi/k, k = 0 for an ideal vertex
  std::vector<Real> angles;
  std::vector<AntiMoebius<F>> reflections;

  Real area() const;
};

/// Q = the half of a symmetric domain to the right of a vertical axis.
/// Throws Inconsistent if an angle is not a submultiple of pi or if a pairing
/// is not the product of the two reflections.
template <class F>
ReflectionPolygon<F> extract_reflection_group(const FundamentalDomain<F>& dom, const MirrorReport<F>& report);

template <class F>
struct DoubledGroup {
  std::vector<Moebius<F>> generators;  // sigma_L sigma_i in side order
  FundamentalDomain<F> domain;         // Q union sigma_L Q
};

/// Index-2 rotation subgroup of the reflection group of Q. Uses a Ford domain
/// when Q has a second vertical side, otherwise a Dirichlet domain centred on
/// the axis.
template <class F>
DoubledGroup<F> double_reflection_group(const ReflectionPolygon<F>& q, int depth = 2);

/// Reflection polygon with a vertex at infinity whose doubled group has the
/// given genus-0 signature (m >= 1).
ReflectionPolygon<Real> polygon_from_signature(const Signature& sig);

}  // namespace dfd
