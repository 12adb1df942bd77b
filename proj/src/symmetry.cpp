#include "dfdom/symmetry.hpp"

#include <algorithm>
#include <cmath>

namespace dfd {

namespace bm = boost::multiprecision;

namespace {

template <class F>
int find_vertex(const FundamentalDomain<F>& dom, const Point<F>& p) {
  for (std::size_t i = 0; i < dom.vertices.size(); ++i) {
    if (dom.vertices[i].point == p) return static_cast<int>(i);
  }
  return -1;
}

// position along an axis, used to order points on it
template <class F>
bool below(const Geodesic<F>& axis, const Point<F>& p, const Point<F>& q) {
  if (p.at_infinity) return false;
  if (q.at_infinity) return true;
  return axis.is_vertical() ? sgn(F(p.Y - q.Y)) < 0 : sgn(F(p.x - q.x)) < 0;
}

long submultiple(const Real& angle) {
  if (angle < Real(1e-30)) return 0;
  const Real k = bm::round(real_pi() / angle);
  if (k < 1 || bm::abs(k * angle - real_pi()) > Real(1e-20)) {
    throw Inconsistent("angle " + to_string(angle, 20) + " is not a submultiple of pi");
  }
  return k.convert_to<long>();
}

template <class F>
F height_between(const F& lo, const F& hi) {
  // a value y in the field with lo < y^2 < hi
  const double a = std::sqrt(std::max(0.0, to_double(lo)));
  const double b = to_double(hi);
  const double top = std::isfinite(b) ? std::sqrt(b) : a + 2.0;
  for (long den : {8L, 64L, 1024L, 65536L}) {
    const F y = from_rational<F>(Rational(std::lround((a + top) / 2 * static_cast<double>(den)), den));
    if (sgn(F(y * y - lo)) > 0 && sgn(F(hi - y * y)) > 0) return y;
  }
  throw std::runtime_error("no centre found between the axis vertices");
}

// cos(pi/k), exact where the value is rational so on-axis centres land on 0
Real cos_pi_over(long k) {
  if (k == 0) return Real(1);
  if (k == 2) return Real(0);
  if (k == 3) return Real(1) / 2;
  return bm::cos(real_pi() / Real(k));
}

// cos(pi/(2k)) = sqrt((1 + cos(pi/k))/2)
Real cos_half(long k) { return k == 0 ? Real(1) : bm::sqrt((1 + cos_pi_over(k)) / 2); }

}  // namespace

template <class F>
Geodesic<F> geodesic_through(const Point<F>& p, const Point<F>& q) {
  if (sgn(F(p.x - q.x)) == 0) return Geodesic<F>::vertical(p.x);
  const F c = (q.x * q.x + q.Y - p.x * p.x - p.Y) / (F(2) * (q.x - p.x));
  const F dx = p.x - c;
  return Geodesic<F>::semicircle(c, F(dx * dx + p.Y));
}

template <class F>
MirrorReport<F> mirror_check(const FundamentalDomain<F>& dom, const Geodesic<F>& axis) {
  MirrorReport<F> rep;
  rep.axis = axis;
  const AntiMoebius<F> sigma = reflection_in(axis);
  const std::size_t n = dom.sides.size();
  std::vector<int> mirror(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point<F> s = sigma.apply(dom.sides[i].end), e = sigma.apply(dom.sides[i].start);
    for (std::size_t j = 0; j < n; ++j) {
      if (dom.sides[j].start == s && dom.sides[j].end == e) mirror[i] = static_cast<int>(j);
    }
    if (mirror[i] < 0 && rep.why.empty()) rep.why = "side " + std::to_string(i) + " has no mirror image";
  }
  rep.has_axis = std::all_of(mirror.begin(), mirror.end(), [](int m) { return m >= 0; });

  for (std::size_t i = 0; i < n; ++i) {
    const Side<F>& s = dom.sides[i];
    const bool to_mirror = s.partner == mirror[i] && mirror[i] != static_cast<int>(i);
    if (to_mirror && s.pairing == sigma * reflection_in(s.geodesic)) continue;
    MirrorViolation v;
    v.side = static_cast<int>(i);
    v.partner = s.partner;
    v.mirror = mirror[i];
    v.involution = s.pairing.pow(2).is_identity();
    const std::size_t p = static_cast<std::size_t>(s.partner);
    v.adjacent = (i + 1) % n == p || (p + 1) % n == i;
    rep.violations.push_back(v);
    if (rep.why.empty()) {
      rep.why = to_mirror ? "pairing of side " + std::to_string(i) + " is not the product of the two reflections"
                          : "side " + std::to_string(i) + " is paired with side " + std::to_string(s.partner) +
                                " instead of its mirror image";
    }
  }
  rep.pairing_symmetric = rep.has_axis && rep.violations.empty();

  // the axis inside the domain
  std::vector<Point<F>> on;
  for (const auto& v : dom.vertices) {
    if (axis.contains(v.point)) on.push_back(v.point);
  }
  for (const auto& s : dom.sides) {
    if (s.geodesic == axis) continue;
    const auto p = intersect(axis.outer(), s.half);
    if (p && !p->at_infinity && dom.contains(*p) && s.half.side(*p) == 0) on.push_back(*p);
  }
  if (on.size() >= 2) {
    auto lo = std::min_element(on.begin(), on.end(), [&](auto& p, auto& q) { return below(axis, p, q); });
    auto hi = std::max_element(on.begin(), on.end(), [&](auto& p, auto& q) { return below(axis, p, q); });
    if (!(*lo == *hi)) {
      rep.center_low = *lo;
      rep.center_high = *hi;
    }
  }
  return rep;
}

template <class F>
MirrorReport<F> df_check(const FundamentalDomain<F>& dom) {
  if (dom.kind != DomainKind::ford) throw std::invalid_argument("df_check needs a Ford domain");
  return mirror_check(dom, Geodesic<F>::vertical(F(dom.x0 + dom.width / F(2))));
}

template <class F>
MirrorReport<F> double_dirichlet_check(const std::vector<Moebius<F>>& gens, const Point<F>& z1, const Point<F>& z2,
                                       int depth) {
  if (z1 == z2 || z1.is_ideal() || z2.is_ideal()) throw std::invalid_argument("need two distinct interior centres");
  auto height = [](const Point<F>& z) {
    auto y = sqrt_exact(z.Y);
    if (!y) throw std::invalid_argument("centre height " + to_string(z.Y) + " is not a square in the field");
    return *y;
  };
  const auto d1 = dirichlet_domain(gens, z1.x, height(z1), depth);
  const auto d2 = dirichlet_domain(gens, z2.x, height(z2), depth);
  const Geodesic<F> axis = geodesic_through(z1, z2);
  if (!same_domain(d1, d2)) {
    MirrorReport<F> rep;
    rep.axis = axis;
    rep.why = "Dirichlet domains at the two centres differ";
    return rep;
  }
  return mirror_check(d1, axis);
}

template <class F>
std::vector<Geodesic<F>> axis_candidates(const FundamentalDomain<F>& dom) {
  std::vector<Geodesic<F>> out;
  auto add = [&](const Geodesic<F>& g) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  if (dom.kind == DomainKind::ford) add(Geodesic<F>::vertical(F(dom.x0 + dom.width / F(2))));
  std::vector<Point<F>> fixed;
  for (const auto& c : dom.cycles) {
    if (c.ideal) continue;
    const auto& u = dom.vertices[static_cast<std::size_t>(c.members[0])].point;
    if (c.members.size() == 1) {
      fixed.push_back(u);
    } else if (c.members.size() == 2) {
      const auto& v = dom.vertices[static_cast<std::size_t>(c.members[1])].point;
      if (sgn(F(u.Y - v.Y)) == 0) add(Geodesic<F>::vertical(F((u.x + v.x) / F(2))));
    }
  }
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    for (std::size_t j = i + 1; j < fixed.size(); ++j) add(geodesic_through(fixed[i], fixed[j]));
  }
  return out;
}

template <class F>
Real ReflectionPolygon<F>::area() const {
  Real s = 0;
  for (const auto& a : angles) s += a;
  return Real(static_cast<long>(sides.size()) - 2) * real_pi() - s;
}

template <class F>
ReflectionPolygon<F> extract_reflection_group(const FundamentalDomain<F>& dom, const MirrorReport<F>& report) {
  if (!report.pairing_symmetric) throw std::invalid_argument("domain is not pairing-symmetric: " + report.why);
  if (!report.axis.is_vertical()) throw std::invalid_argument("axis must be vertical; conjugate the group first");
  if (!report.center_low || !report.center_high) throw Inconsistent("axis does not cross the domain");
  const F a = report.axis.x;
  const Point<F>& top = *report.center_high;
  const Point<F>& bottom = *report.center_low;
  const std::size_t n = dom.sides.size();
  auto right = [&](const Side<F>& s) {
    const F x = s.geodesic.is_vertical() ? s.geodesic.x : F((s.start.x + s.end.x) / F(2));
    return sgn(F(x - a)) > 0;
  };

  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (right(dom.sides[i]) && dom.sides[i].start == bottom) first = i;
  }
  if (first == n) throw Inconsistent("no side leaves the lower end of the axis");

  ReflectionPolygon<F> q;
  const AntiMoebius<F> sigma = reflection_in(report.axis);
  auto half_angle = [&](const Point<F>& p) -> Real {
    if (p.is_ideal()) return Real(0);
    const int v = find_vertex(dom, p);
    if (v < 0) return real_pi() / 2;  // the axis crosses a side at right angles
    return dom.vertices[static_cast<std::size_t>(v)].angle / 2;
  };
  q.sides.push_back(HalfPlane<F>{F(1), F(0), F(-a)});
  q.vertices = {top, bottom};
  q.angles = {half_angle(top), half_angle(bottom)};
  for (std::size_t k = 0; k < n; ++k) {
    const Side<F>& s = dom.sides[(first + k) % n];
    if (!right(s)) throw Inconsistent("right half of the domain is not contiguous");
    if (!(s.pairing == sigma * reflection_in(s.geodesic))) {
      throw Inconsistent("side pairing is not the product of the axis and side reflections");
    }
    q.sides.push_back(s.half);
    if (s.end == top) break;
    q.vertices.push_back(s.end);
    const int v = find_vertex(dom, s.end);
    q.angles.push_back(dom.vertices[static_cast<std::size_t>(v)].angle);
  }
  for (const auto& ang : q.angles) q.angle_k.push_back(submultiple(ang));
  for (const auto& h : q.sides) q.reflections.push_back(reflection_in(Geodesic<F>::of(h)));
  return q;
}

template <class F>
DoubledGroup<F> double_reflection_group(const ReflectionPolygon<F>& q, int depth) {
  const std::size_t n = q.sides.size();
  std::size_t li = n, ki = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!q.sides[i].is_vertical()) continue;
    if (li == n) {
      li = i;
    } else {
      ki = i;
    }
  }
  if (li == n) throw std::invalid_argument("polygon has no vertical side; conjugate it first");
  for (long k : q.angle_k) {
    if (k == 1) throw std::invalid_argument("polygon angle pi is not a vertex");
  }
  const Geodesic<F> L = Geodesic<F>::of(q.sides[li]);
  const AntiMoebius<F> sigma = reflection_in(L);

  DoubledGroup<F> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != li) out.generators.push_back(sigma * reflection_in(Geodesic<F>::of(q.sides[i])));
  }
  const Point<F>& v0 = q.vertices[li];
  const Point<F>& v1 = q.vertices[(li + 1) % n];
  if (ki != n) {
    const F xk = Geodesic<F>::of(q.sides[ki]).x;
    const F xm = F(F(2) * L.x - xk);
    FordOptions<F> opts;
    opts.depth = depth;
    opts.x0 = sgn(F(xk - xm)) < 0 ? xk : xm;
    out.domain = ford_domain(out.generators, opts);
  } else {
    const Point<F>& lo = below(L, v0, v1) ? v0 : v1;
    const Point<F>& hi = below(L, v0, v1) ? v1 : v0;
    const F y = height_between(lo.Y, hi.Y);
    out.domain = dirichlet_domain(out.generators, L.x, y, depth);
  }

  // the domain must be exactly Q and its mirror image
  const auto& dom = out.domain;
  if (dom.sides.size() != 2 * (n - 1)) {
    throw Inconsistent("doubled domain has " + std::to_string(dom.sides.size()) + " sides, expected " +
                       std::to_string(2 * (n - 1)));
  }
  auto has_side = [&](const Point<F>& s, const Point<F>& e) {
    return std::any_of(dom.sides.begin(), dom.sides.end(), [&](const Side<F>& t) { return t.start == s && t.end == e; });
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (i == li) continue;
    const Point<F>& s = q.vertices[i];
    const Point<F>& e = q.vertices[(i + 1) % n];
    if (!has_side(s, e) || !has_side(sigma.apply(e), sigma.apply(s))) {
      throw Inconsistent("doubled domain is not the union of the polygon and its mirror image");
    }
  }
  if (bm::abs(area(dom) - 2 * q.area()) > Real(1e-20)) throw Inconsistent("doubled area is not twice the polygon area");
  return out;
}

ReflectionPolygon<Real> polygon_from_signature(const Signature& sig) {
  if (sig.genus != 0 || sig.cusps < 1) throw std::invalid_argument("construction needs genus 0 and at least one cusp");
  for (long n : sig.cone_orders) {
    if (n < 2) throw std::invalid_argument("cone orders must be at least 2");
  }
  if (sig.area() <= Real(1e-30)) throw std::invalid_argument("signature " + to_string(sig) + " is not hyperbolic");

  // chain of vertices below the strip: cones in m blocks separated by m - 1 ideal vertices
  const long t = static_cast<long>(sig.cone_orders.size());
  const long m = sig.cusps;
  std::vector<long> chain;
  std::size_t next = 0;
  for (long b = 0; b < m; ++b) {
    const long size = t / m + (b < t % m ? 1 : 0);
    for (long j = 0; j < size; ++j) chain.push_back(sig.cone_orders[next++]);
    if (b + 1 < m) chain.push_back(0);
  }
  const std::size_t N = chain.size();
  std::vector<Real> theta;
  for (long k : chain) theta.push_back(k == 0 ? Real(0) : real_pi() / Real(k));

  // unit circles; consecutive centres 2cos(theta/2) apart meet at angle theta
  std::vector<Real> c{cos_pi_over(chain[0])};
  for (std::size_t j = 1; j + 1 < N; ++j) c.push_back(c.back() + 2 * cos_half(chain[j]));
  const Real h = c.back() + cos_pi_over(chain[N - 1]);

  ReflectionPolygon<Real> q;
  q.sides.push_back(HalfPlane<Real>{1, 0, 0});
  for (const Real& cj : c) q.sides.push_back(HalfPlane<Real>{-2 * cj, 1, cj * cj - 1});
  q.sides.push_back(HalfPlane<Real>{-1, 0, h});

  q.vertices.push_back(Point<Real>::infinity());
  q.vertices.push_back(Point<Real>{0, 1 - c[0] * c[0], false});
  for (std::size_t j = 0; j + 1 < c.size(); ++j) {
    const Real half = (c[j + 1] - c[j]) / 2;
    q.vertices.push_back(Point<Real>{(c[j] + c[j + 1]) / 2, 1 - half * half, false});
  }
  const Real dk = h - c.back();
  q.vertices.push_back(Point<Real>{h, 1 - dk * dk, false});
  for (auto& v : q.vertices) {
    if (!v.at_infinity && bm::abs(v.Y) < Real(1e-30)) v.Y = 0;
  }

  q.angle_k.push_back(0);
  q.angles.push_back(0);
  for (std::size_t j = 0; j < N; ++j) {
    q.angle_k.push_back(chain[j]);
    q.angles.push_back(theta[j]);
  }
  // independent check of the closed form against the measured angles
  for (std::size_t i = 1; i < q.sides.size(); ++i) {
    const Real got = interior_angle(q.sides[i - 1], q.sides[i], q.vertices[i]);
    if (bm::abs(got - q.angles[i]) > Real(1e-25)) {
      throw Inconsistent("constructed polygon has angle " + to_string(got, 20) + " at vertex " + std::to_string(i));
    }
  }
  for (const auto& s : q.sides) q.reflections.push_back(reflection_in(Geodesic<Real>::of(s)));
  return q;
}

#define DFD_INSTANTIATE(F)                                                                                     \
  template Geodesic<F> geodesic_through(const Point<F>&, const Point<F>&);                                     \
  template MirrorReport<F> mirror_check(const FundamentalDomain<F>&, const Geodesic<F>&);                      \
  template MirrorReport<F> df_check(const FundamentalDomain<F>&);                                              \
  template MirrorReport<F> double_dirichlet_check(const std::vector<Moebius<F>>&, const Point<F>&,             \
                                                  const Point<F>&, int);                                       \
  template std::vector<Geodesic<F>> axis_candidates(const FundamentalDomain<F>&);                              \
  template struct ReflectionPolygon<F>;                                                                        \
  template ReflectionPolygon<F> extract_reflection_group(const FundamentalDomain<F>&, const MirrorReport<F>&); \
  template DoubledGroup<F> double_reflection_group(const ReflectionPolygon<F>&, int);

DFD_INSTANTIATE(QuadRat)
DFD_INSTANTIATE(Real)

}  // namespace dfd
