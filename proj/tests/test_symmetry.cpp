#include "doctest.h"

#include "dfdom/symmetry.hpp"
#include "fixtures.hpp"

#include <random>

using namespace dfd;
using fx::q;
using M = Moebius<QuadRat>;
using P = Point<QuadRat>;
using Dom = FundamentalDomain<QuadRat>;
using Geo = Geodesic<QuadRat>;

namespace {

bool close(const Real& a, const Real& b, double tol = 1e-25) { return boost::multiprecision::abs(a - b) < Real(tol); }

// rotate a sequence so it is lexicographically least; compares cyclic orders
std::vector<long> canonical(std::vector<long> v) {
  std::vector<long> best = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::rotate(v.begin(), v.begin() + 1, v.end());
    best = std::min(best, v);
  }
  return best;
}

bool same_cyclic(std::vector<long> a, const std::vector<long>& b) {
  if (canonical(a) == canonical(b)) return true;
  std::reverse(a.begin(), a.end());
  return canonical(a) == canonical(b);
}

// triangle (pi/2, pi/3, 0) moved by z -> (z + 1)/(1 - z): its vertical side is
// the imaginary axis and no vertex is at infinity
ReflectionPolygon<QuadRat> turned_triangle() {
  ReflectionPolygon<QuadRat> t;
  t.sides = {HalfPlane<QuadRat>{-1, 0, 0}, HalfPlane<QuadRat>{2, -1, 3}, HalfPlane<QuadRat>{0, 1, -1}};
  t.vertices = {P::interior(0, 1), P{0, 3, false}, P::boundary(-1)};
  t.angle_k = {2, 3, 0};
  t.angles = {real_pi() / 2, real_pi() / 3, Real(0)};
  for (const auto& h : t.sides) t.reflections.push_back(reflection_in(Geo::of(h)));
  return t;
}

}  // namespace

TEST_CASE("df_check on the modular and Gamma domains") {
  const Dom mod = ford_domain(fx::modular(), 3);
  const auto rm = df_check(mod);
  CHECK(rm.has_axis);
  CHECK(rm.pairing_symmetric);
  CHECK(rm.axis == Geo::vertical(0));
  REQUIRE(rm.center_low.has_value());
  CHECK(*rm.center_low == P::interior(0, 1));
  CHECK(rm.center_high->at_infinity);

  const Dom gam = ford_domain(fx::gamma11(), 2);
  const auto rg = df_check(gam);
  CHECK(rg.pairing_symmetric);
  CHECK(rg.axis == Geo::vertical(0));
  CHECK(rg.violations.empty());
  // oracle: each pairing is sigma_L composed with the reflection in its own side
  const auto sl = reflection_in(Geo::vertical(0));
  for (const auto& s : gam.sides) CHECK(s.pairing == sl * reflection_in(s.geodesic));
  CHECK(signature(gam).genus == 0);
}

TEST_CASE("normalizer fails the DF test at its involutions") {
  const Dom n = ford_domain(fx::ngamma0_11(), 2);
  const auto r = df_check(n);
  CHECK(r.has_axis);  // the side set is mirror symmetric, the gluing is not
  CHECK_FALSE(r.pairing_symmetric);
  REQUIRE(r.violations.size() == 4);
  for (const auto& v : r.violations) {
    CHECK(v.involution);
    CHECK(v.adjacent);
    // oracle: the pairing is one of the two listed involutions centred at -+1/3
    const auto& g = n.sides[static_cast<std::size_t>(v.side)].pairing;
    CHECK((g == fx::ngamma0_11()[3] || g == fx::ngamma0_11()[4]));
    CHECK(isometric_circle(g).radius * isometric_circle(g).radius == q(1, 99));
  }
}

TEST_CASE("G has genus one and no DF domain") {
  const Dom g = ford_domain(fx::g_intersection(), 2);
  CHECK(signature(g).genus == 1);
  CHECK_FALSE(df_check(g).pairing_symmetric);
}

TEST_CASE("double Dirichlet checks") {
  const auto mod = double_dirichlet_check(fx::modular(), P::interior(0, 2), P::interior(0, 3), 3);
  CHECK(mod.pairing_symmetric);
  CHECK(mod.axis == Geo::vertical(0));

  const auto gam = double_dirichlet_check(fx::gamma11(), P::interior(0, 1), P::interior(0, 2), 3);
  CHECK(gam.pairing_symmetric);
  CHECK(same_domain(dirichlet_domain(fx::gamma11(), QuadRat(0), QuadRat(1), 3), ford_domain(fx::gamma11(), 2)));

  // conjugating by a fifth of a translation moves the line of centres off x = 0
  const M c(1, q(1, 5), 0, 1);
  std::vector<M> conj;
  for (const auto& g : fx::modular()) conj.push_back(c * g * c.inverse());
  const auto moved = double_dirichlet_check(conj, P::interior(0, 2), P::interior(0, 3), 3);
  CHECK_FALSE(moved.has_axis);
  CHECK_FALSE(moved.pairing_symmetric);
  const auto back = double_dirichlet_check(conj, P::interior(q(1, 5), 2), P::interior(q(1, 5), 3), 3);
  CHECK(back.pairing_symmetric);
}

TEST_CASE("no second line of centres") {
  // 22/61 + 120i/61 lies on |z| = 2 with 2i; the geodesic through them is not an axis
  const P z1 = P::interior(0, 2);
  const P z2 = P::interior(q(22, 61), q(120, 61));
  CHECK(geodesic_through(z1, z2) == Geo::semicircle(0, 4));
  CHECK_FALSE(double_dirichlet_check(fx::modular(), z1, z2, 3).pairing_symmetric);
  // i and 3/5 + 4i/5 on the unit circle for Gamma
  const P w1 = P::interior(0, 1);
  const P w2 = P::interior(q(3, 5), q(4, 5));
  CHECK_FALSE(double_dirichlet_check(fx::gamma11(), w1, w2, 4).pairing_symmetric);
}

TEST_CASE("axis points are Dirichlet centres of DF domains") {
  for (const auto& gens : {fx::modular(), fx::gamma11()}) {
    const Dom f = ford_domain(gens, 3);
    const auto r = df_check(f);
    REQUIRE(r.pairing_symmetric);
    const QuadRat low = r.center_low->Y;
    for (long k : {2L, 3L, 7L}) {
      // sample heights above the lowest axis point
      const QuadRat y = QuadRat(k);
      REQUIRE(y * y > low);
      CHECK(same_domain(dirichlet_domain(gens, QuadRat(0), y, 3), f));
    }
    const auto cand = axis_candidates(f);
    REQUIRE_FALSE(cand.empty());
    CHECK(cand.front() == Geo::vertical(0));
  }
}

TEST_CASE("extracted reflection polygons") {
  const Dom gam = ford_domain(fx::gamma11(), 2);
  const auto hex = extract_reflection_group(gam, df_check(gam));
  CHECK(hex.angle_k == std::vector<long>{0, 2, 2, 0, 2, 2});
  CHECK(close(hex.area(), 2 * real_pi()));
  CHECK(close(2 * hex.area(), area(gam)));
  REQUIRE(hex.reflections.size() == 6);
  for (std::size_t i = 0; i < hex.angle_k.size(); ++i) {
    const long k = hex.angle_k[i];
    if (k == 0) continue;
    // reflections in adjacent sides compose to a rotation of order k
    const auto& a = hex.reflections[(i + hex.sides.size() - 1) % hex.sides.size()];
    const auto& b = hex.reflections[i];
    CHECK((a * b).pow(k).is_identity());
    CHECK_FALSE((a * b).is_identity());
  }

  const Dom mod = ford_domain(fx::modular(), 3);
  const auto tri = extract_reflection_group(mod, df_check(mod));
  CHECK(same_cyclic(tri.angle_k, {2, 3, 0}));
  CHECK(close(tri.area(), real_pi() / 6));

  const Dom n = ford_domain(fx::ngamma0_11(), 2);
  CHECK_THROWS_AS(extract_reflection_group(n, df_check(n)), std::invalid_argument);
}

TEST_CASE("doubling a reflection polygon") {
  const Dom mod = ford_domain(fx::modular(), 3);
  const auto tri = extract_reflection_group(mod, df_check(mod));
  const auto dbl = double_reflection_group(tri);
  REQUIRE(dbl.generators.size() == 2);
  // sigma_L sigma_unit-circle = S and sigma_L sigma_K = a unit translation
  CHECK(dbl.generators[0] == fx::S());
  CHECK((dbl.generators[1] == fx::T() || dbl.generators[1] == fx::T().inverse()));
  CHECK(same_domain(dbl.domain, mod));
  CHECK(close(area(dbl.domain), 2 * tri.area()));

  const Dom gam = ford_domain(fx::gamma11(), 2);
  const auto hex = extract_reflection_group(gam, df_check(gam));
  const auto dg = double_reflection_group(hex);
  CHECK(same_domain(dg.domain, gam));
  // oracle: every regenerated element lies in Gamma and every generator of Gamma in the new group
  for (const auto& g : dg.generators) CHECK(reduce(g, gam).identity());
  for (const auto& g : fx::gamma11()) CHECK(reduce(g, dg.domain).identity());
  const auto again = extract_reflection_group(dg.domain, df_check(dg.domain));
  CHECK(again.angle_k == hex.angle_k);
}

TEST_CASE("doubling without a cusp on the axis") {
  const auto t = turned_triangle();
  for (std::size_t i = 0; i < t.sides.size(); ++i) {
    CHECK(close(interior_angle(t.sides[(i + 2) % 3], t.sides[i], t.vertices[i]), t.angles[i]));
  }
  const auto dbl = double_reflection_group(t, 3);
  CHECK(dbl.domain.kind == DomainKind::dirichlet);
  CHECK(dbl.generators[1] == fx::S());
  CHECK(signature(dbl.domain) == Signature{0, {2, 3}, 1});
  CHECK(close(area(dbl.domain), real_pi() / 3));
  const auto r = mirror_check(dbl.domain, Geo::vertical(0));
  CHECK(r.pairing_symmetric);
  CHECK(*r.center_low == P::interior(0, 1));
  CHECK(*r.center_high == P(0, 3, false));
  const auto back = extract_reflection_group(dbl.domain, r);
  CHECK(same_cyclic(back.angle_k, t.angle_k));
  // the conjugated modular group has a double Dirichlet domain along the imaginary axis
  const auto dd = double_dirichlet_check(dbl.generators, P::interior(0, q(6, 5)), P::interior(0, q(3, 2)), 3);
  CHECK(dd.pairing_symmetric);
}

TEST_CASE("polygon from signature") {
  const auto modq = polygon_from_signature(Signature{0, {2, 3}, 1});
  CHECK(modq.angle_k == std::vector<long>{0, 2, 3});
  CHECK(modq.sides[1].cs == 0);
  CHECK(close(Geodesic<Real>::of(modq.sides[2]).x, Real(1) / 2));

  const auto hex = polygon_from_signature(Signature{0, {2, 2, 2, 2}, 2});
  CHECK(hex.angle_k == std::vector<long>{0, 2, 2, 0, 2, 2});

  // thrice-punctured sphere: an ideal triangle, doubled to an ideal quadrilateral
  const auto ideal = polygon_from_signature(Signature{0, {}, 3});
  CHECK(ideal.angle_k == std::vector<long>{0, 0, 0});
  const auto d = double_reflection_group(ideal);
  CHECK(d.domain.sides.size() == 4);
  for (const auto& v : d.domain.vertices) CHECK(v.point.is_ideal());
  CHECK(signature(d.domain) == Signature{0, {}, 3});

  CHECK_THROWS_AS(polygon_from_signature(Signature{0, {2, 2}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(polygon_from_signature(Signature{1, {}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(polygon_from_signature(Signature{0, {3, 3, 3}, 0}), std::invalid_argument);
}

TEST_CASE("random signatures round-trip through doubling and extraction") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Signature sig;
    sig.cusps = 1 + static_cast<long>(rng() % 3);
    const int t = static_cast<int>(rng() % 4);
    for (int i = 0; i < t; ++i) sig.cone_orders.push_back(2 + static_cast<long>(rng() % 6));
    std::sort(sig.cone_orders.begin(), sig.cone_orders.end());
    if (sig.area() <= 0) {
      --trial;
      continue;
    }
    CAPTURE(to_string(sig));
    const auto qpoly = polygon_from_signature(sig);
    CHECK(close(2 * qpoly.area(), sig.area(), 1e-20));
    const auto dbl = double_reflection_group(qpoly);
    CHECK(signature(dbl.domain) == sig);
    const auto rep = df_check(dbl.domain);
    REQUIRE(rep.pairing_symmetric);
    CHECK(signature(dbl.domain).genus == 0);
    const auto back = extract_reflection_group(dbl.domain, rep);
    CHECK(back.angle_k == qpoly.angle_k);
    REQUIRE(back.vertices.size() == qpoly.vertices.size());
    for (std::size_t i = 0; i < back.vertices.size(); ++i) CHECK(back.vertices[i] == qpoly.vertices[i]);
  }
}
