#include "doctest.h"

#include "fixtures.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace dfd;
using fx::q;
using fx::r11;
using M = Moebius<QuadRat>;
using P = Point<QuadRat>;
using Dom = FundamentalDomain<QuadRat>;

namespace {

bool close(const Real& a, const Real& b, double tol = 1e-25) { return boost::multiprecision::abs(a - b) < Real(tol); }

const Dom& modular_dom() {
  static const Dom d = ford_domain(fx::modular(), 3);
  return d;
}
const Dom& gamma_dom() {
  static const Dom d = ford_domain(fx::gamma11(), 2);
  return d;
}
const Dom& g_dom() {
  static const Dom d = ford_domain(fx::g_intersection(), 2);
  return d;
}

// a point in the relative interior of side s, computed from its geodesic
P side_sample(const Side<QuadRat>& s) {
  if (s.geodesic.is_vertical()) {
    const QuadRat y0 = s.start.at_infinity ? s.end.Y : s.start.Y;
    return P::interior(s.geodesic.x, y0 + QuadRat(1));
  }
  const QuadRat x = (s.start.x + s.end.x) / QuadRat(2);
  const QuadRat dx = x - s.geodesic.center;
  return P{x, s.geodesic.rho - dx * dx, false};
}

std::multiset<std::string> circle_keys(const Dom& d) {
  std::multiset<std::string> out;
  for (const auto& s : d.sides) {
    if (!s.geodesic.is_vertical()) out.insert(to_string(s.geodesic.center) + "|" + to_string(s.geodesic.rho));
  }
  return out;
}

Word random_word(std::mt19937& rng, int ngens, int len) {
  Word w;
  for (int i = 0; i < len; ++i) {
    const int k = 1 + static_cast<int>(rng() % ngens);
    w.push_back(rng() % 2 ? k : -k);
  }
  return w;
}

void check_invariants(const Dom& d) {
  // bijective, orientation-reversing pairing
  for (std::size_t i = 0; i < d.sides.size(); ++i) {
    const auto& s = d.sides[i];
    REQUIRE(s.partner >= 0);
    const auto& t = d.sides[static_cast<std::size_t>(s.partner)];
    CHECK(t.partner == static_cast<int>(i));
    CHECK(s.pairing.apply(s.start) == t.end);
    CHECK(s.pairing.apply(s.end) == t.start);
    CHECK(t.geodesic.contains(s.pairing.apply(side_sample(s))));
    CHECK(evaluate(s.word, d.generators) == s.pairing);
  }
  for (const auto& c : d.cycles) {
    if (c.ideal) {
      CHECK(c.transform.classify().kind == MapKind::parabolic);
    } else {
      CHECK(close(c.angle_sum * Real(c.order), 2 * real_pi(), 1e-20));
      CHECK(c.transform.pow(c.order).is_identity());
    }
  }
  const Signature sig = signature(d);
  CHECK(close(area(d), sig.area(), 1e-20));
  CHECK(area(d) > 0);
}

}  // namespace

TEST_CASE("words") {
  CHECK(to_string(Word{1, -2, 2}) == to_string(Word{1, -2, 2}));
  CHECK(concat(Word{1, 2}, Word{-2, 3}) == Word{1, 3});
  CHECK(concat(Word{1, 2}, inverse(Word{1, 2})).empty());
  const auto gens = fx::gamma11();
  const Word w{2, 3, -1};
  CHECK(evaluate(w, gens) == fx::gamma2() * fx::gamma3() * fx::T().inverse());
  CHECK(evaluate(inverse(w), gens) == evaluate(w, gens).inverse());
  const auto els = enumerate_words(fx::modular(), 2);
  std::set<std::string> keys;
  for (const auto& e : els) {
    CHECK_FALSE(e.map.is_identity());
    CHECK(evaluate(e.word, fx::modular()) == e.map);
    keys.insert(to_string(e.map));
  }
  CHECK(keys.size() == els.size());
}

TEST_CASE("modular Ford domain") {
  const Dom& d = modular_dom();
  REQUIRE(d.sides.size() == 4);
  CHECK(d.width == QuadRat(1));
  CHECK(d.x0 == q(-1, 2));
  CHECK(d.sides.front().geodesic == Geodesic<QuadRat>::vertical(q(-1, 2)));
  CHECK(d.sides.back().geodesic == Geodesic<QuadRat>::vertical(q(1, 2)));
  CHECK(d.sides[1].geodesic == Geodesic<QuadRat>::semicircle(0, 1));
  CHECK(d.sides[2].geodesic == Geodesic<QuadRat>::semicircle(0, 1));
  const P rho{q(1, 2), q(3, 4), false};
  const P rho_bar{q(-1, 2), q(3, 4), false};
  CHECK(d.vertices[0].point.at_infinity);
  CHECK(d.vertices[1].point == rho_bar);
  CHECK(d.vertices[2].point == P::interior(0, 1));
  CHECK(d.vertices[3].point == rho);

  // oracle: the classical side pairings, walked by hand
  CHECK(d.sides[0].pairing == fx::T());
  CHECK(d.sides[1].pairing == fx::S());
  CHECK(fx::T().apply(rho_bar) == rho);
  CHECK(fx::S().apply(rho) == rho_bar);

  const auto& cyc = vertex_cycles(d);
  REQUIRE(cyc.size() == 3);
  int ideal = 0;
  for (const auto& c : cyc) {
    if (c.ideal) {
      ++ideal;
      continue;
    }
    if (c.members.size() == 1) {
      CHECK(c.order == 2);
      CHECK(close(c.angle_sum, real_pi()));
    } else {
      CHECK(c.members.size() == 2);
      CHECK(c.order == 3);
      CHECK(close(c.angle_sum, 2 * real_pi() / 3));
    }
  }
  CHECK(ideal == 1);
  CHECK(close(area(d), real_pi() / 3));
  // Gauss-Bonnet by hand on the quadrilateral (inf, -conj(rho), i, rho)
  CHECK(close(area(d), 2 * real_pi() - (real_pi() / 3 + real_pi() + real_pi() / 3)));
  CHECK(to_string(signature(d)) == "(0; 2, 3; 1)");
  CHECK(cusp_classes(d).size() == 1);
  check_invariants(d);
}

TEST_CASE("Gamma Ford domain") {
  const Dom& d = gamma_dom();
  REQUIRE(d.sides.size() == 10);
  // oracle: isometric circles of the generators from the centre/radius formula
  std::multiset<std::string> expect;
  for (const M& g : {fx::gamma2(), fx::gamma3(), fx::gamma3().inverse(), fx::gamma4(), fx::gamma4().inverse(),
                     fx::gamma5(), fx::gamma5().inverse()}) {
    const auto c = isometric_circle(g);
    expect.insert(to_string(c.center) + "|" + to_string(c.radius * c.radius));
  }
  // gamma2 is an involution, its circle is split in two at the fixed point
  expect.insert(to_string(QuadRat(0)) + "|" + to_string(q(1, 11)));
  CHECK(circle_keys(d) == expect);
  const Signature sig = signature(d);
  CHECK(sig == Signature{0, {2, 2, 2, 2}, 2});
  CHECK(close(area(d), 4 * real_pi()));
  long finite = 0;
  for (const auto& c : d.cycles) {
    if (!c.ideal) {
      ++finite;
      CHECK(c.order == 2);
    }
  }
  CHECK(finite == 4);
  CHECK(cusp_classes(d).size() == 2);
  check_invariants(d);
}

TEST_CASE("G Ford domain") {
  const Dom& d = g_dom();
  const Signature sig = signature(d);
  CHECK(sig.genus == 1);
  CHECK(sig.cusps == 4);
  CHECK(sig.cone_orders.empty());
  CHECK(close(area(d), 8 * real_pi()));

  std::vector<const VertexCycle<QuadRat>*> finite;
  for (const auto& c : d.cycles)
    if (!c.ideal) finite.push_back(&c);
  REQUIRE(finite.size() == 1);
  CHECK(finite[0]->members.size() == 4);
  CHECK(finite[0]->order == 1);
  CHECK(finite[0]->equal_heights);
  CHECK(close(finite[0]->angle_sum, 2 * real_pi()));
  for (int m : finite[0]->members) {
    const auto& v = d.vertices[static_cast<std::size_t>(m)];
    const QuadRat ax = v.point.x < QuadRat(0) ? -v.point.x : v.point.x;
    if (ax == q(1, 2)) {
      CHECK(close(v.angle, real_pi() / 3));
    } else {
      CHECK(ax == q(3, 22));
      CHECK(close(v.angle, 2 * real_pi() / 3));
    }
  }

  std::set<std::set<std::string>> classes;
  for (const auto& cls : cusp_classes(d)) {
    std::set<std::string> s;
    for (const auto& p : cls) s.insert(p.at_infinity ? "inf" : to_string(p.x));
    classes.insert(s);
  }
  const std::set<std::set<std::string>> expect{
      {"inf"}, {"0"}, {"1/3", "-1/3"}, {"4/11", "3/11", "-3/11", "-4/11"}};
  CHECK(classes == expect);
  check_invariants(d);
}

TEST_CASE("normalizer Ford domain") {
  const Dom d = ford_domain(fx::ngamma0_11(), 2);
  CHECK(close(area(d), 2 * real_pi()));
  check_invariants(d);
}

TEST_CASE("Shimizu and horocycle properties") {
  for (const Dom* d : {&modular_dom(), &gamma_dom(), &g_dom()}) {
    REQUIRE(d->width == QuadRat(1));
    for (const auto& s : d->sides) {
      if (!s.geodesic.is_vertical()) CHECK(s.geodesic.rho <= QuadRat(1));
    }
    for (const auto& c : d->cycles) {
      if (c.ideal) continue;
      CHECK(c.equal_heights);
      for (int m : c.members) CHECK(d->vertices[static_cast<std::size_t>(m)].point.Y ==
                                    d->vertices[static_cast<std::size_t>(c.members[0])].point.Y);
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(ford_domain(std::vector<M>{fx::gamma4(), fx::gamma5()}, 3), NoParabolicAtInfinity);
  CHECK_THROWS_AS(dirichlet_domain(fx::modular(), QuadRat(0), QuadRat(1), 3), CenterIsFixedPoint);
  // too shallow to see gamma3's partner circles
  CHECK_THROWS_AS(ford_domain(std::vector<M>{fx::T(), fx::gamma2()}, 1), Unverified);
}

TEST_CASE("Dirichlet domains") {
  const Dom d2 = dirichlet_domain(fx::modular(), QuadRat(0), QuadRat(2), 3);
  const Dom d3 = dirichlet_domain(fx::modular(), QuadRat(0), QuadRat(3), 3);
  CHECK(same_domain(d2, modular_dom()));
  CHECK(same_domain(d2, d3));
  const Dom dg = dirichlet_domain(fx::gamma11(), QuadRat(0), QuadRat(1), 3);
  CHECK(same_domain(dg, gamma_dom()));
  CHECK_FALSE(same_domain(dg, modular_dom()));

  // equidistance from the centre across every pairing
  for (const Dom* d : {&d2, &dg}) {
    const P z0 = d->center();
    for (const auto& s : d->sides) {
      const P z = side_sample(s);
      CHECK(close(distance(z, z0), distance(s.pairing.apply(z), z0), 1e-20));
      if (!s.start.is_ideal()) CHECK(close(distance(s.start, z0), distance(s.pairing.apply(s.start), z0), 1e-20));
    }
    check_invariants(*d);
  }

  // oracle: a point just outside a bisector is strictly closer to the image centre
  for (const auto& s : dg.sides) {
    const P z = side_sample(s);
    const bool v = s.geodesic.is_vertical();
    const P out{v ? z.x + q(1, 100) : z.x, v ? z.Y : z.Y * q(101, 100), false};
    const P in{v ? z.x - q(1, 100) : z.x, v ? z.Y : z.Y * q(99, 100), false};
    const P w = s.pairing.inverse().apply(dg.center());
    const bool out_excluded = s.half.side(out) < 0;
    const P excluded = out_excluded ? out : in;
    CHECK(distance(excluded, w) < distance(excluded, dg.center()));
  }
}

TEST_CASE("reduce examples") {
  const P zb = P::interior(q(1, 10), 4);
  CHECK(reduce(fx::T().pow(2), modular_dom(), zb).identity());
  CHECK_FALSE(reduce(M(1, q(1, 2), 0, 1), modular_dom(), zb).identity());
  CHECK(reduce(fx::gamma2() * fx::gamma3(), gamma_dom()).identity());
  CHECK_FALSE(reduce(M(1, 0, 1, 1), gamma_dom()).identity());
  CHECK(reduce(M(1, 0, 11, 1), gamma_dom()).identity());
  CHECK(gamma_dom().contains_interior(default_base_point(gamma_dom())));
  CHECK_THROWS_AS(reduce(M(1, 0, 11, 1).pow(3), gamma_dom(), default_base_point(gamma_dom()), 1), ReductionBudget);
}

TEST_CASE("reduce solves the word problem on random words") {
  std::mt19937 rng(20261018);
  for (const Dom* d : {&modular_dom(), &gamma_dom(), &g_dom()}) {
    const auto& gens = d->generators;
    const P zb = default_base_point(*d);
    for (int i = 0; i < 100; ++i) {
      const M g = evaluate(random_word(rng, static_cast<int>(gens.size()), 1 + static_cast<int>(rng() % 8)), gens);
      const auto r = reduce(g, *d, zb);
      REQUIRE(r.identity());
      // rebuild h from the returned word and check h g = 1
      M h;
      for (auto [side, k] : r.word) {
        const M step = side < 0 ? d->translation() : d->sides[static_cast<std::size_t>(side)].pairing;
        h = step.pow(k) * h;
      }
      CHECK((h * g).is_identity());
    }
  }
}

TEST_CASE("Real-valued construction agrees") {
  using R = Moebius<Real>;
  const std::vector<R> gens{R(1, 1, 0, 1), R(0, -1, 1, 0)};
  const auto d = ford_domain(gens, 3);
  CHECK(d.sides.size() == 4);
  CHECK(signature(d) == Signature{0, {2, 3}, 1});
  CHECK(close(area(d), real_pi() / 3, 1e-20));
}
