#include "dfdom/domains.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace dfd {

namespace bm = boost::multiprecision;

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0) out += ' ';
    out += 'g' + std::to_string(std::abs(w[i]));
    if (w[i] < 0) out += "^-1";
  }
  return out;
}

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

Word concat(const Word& u, const Word& v) {
  Word r = u;
  for (int x : v) {
    if (!r.empty() && r.back() == -x) {
      r.pop_back();
    } else {
      r.push_back(x);
    }
  }
  return r;
}

namespace {

using dfd::key_of;

Word word_pow(const Word& w, long k) {
  Word base = k < 0 ? inverse(w) : w;
  Word r;
  for (long i = 0; i < std::labs(k); ++i) r = concat(r, base);
  return r;
}

template <class F>
std::string key_of(const Moebius<F>& g) {
  return key_of(g.a()) + "," + key_of(g.b()) + "," + key_of(g.c()) + "," + key_of(g.d());
}

template <class F>
std::string key_of(const HalfPlane<F>& h) {
  const HalfPlane<F> n = h.normalized();
  return key_of(n.cs) + "," + key_of(n.ct) + "," + key_of(n.c0);
}

template <class F>
std::string key_of(const Point<F>& p) {
  if (p.at_infinity) return "inf";
  return key_of(p.x) + "," + key_of(p.Y);
}

}  // namespace

template <class F>
Moebius<F> evaluate(const Word& w, const std::vector<Moebius<F>>& gens) {
  Moebius<F> g;
  for (int x : w) {
    const Moebius<F>& s = gens.at(static_cast<std::size_t>(std::abs(x) - 1));
    g = g * (x > 0 ? s : s.inverse());
  }
  return g;
}

template <class F>
std::vector<Element<F>> enumerate_words(const std::vector<Moebius<F>>& gens, int depth) {
  std::vector<Element<F>> letters;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    letters.push_back({gens[i], {k}});
    letters.push_back({gens[i].inverse(), {-k}});
  }
  std::vector<Element<F>> out;
  std::unordered_set<std::string> seen{key_of(Moebius<F>())};
  std::vector<Element<F>> frontier{{Moebius<F>(), {}}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<Element<F>> next;
    for (const auto& e : frontier) {
      for (const auto& l : letters) {
        if (!e.word.empty() && e.word.back() == -l.word[0]) continue;
        Element<F> n{e.map * l.map, concat(e.word, l.word)};
        if (!seen.insert(key_of(n.map)).second) continue;
        next.push_back(n);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

Real Signature::area() const {
  Real s = Real(2 * genus - 2 + cusps);
  for (long n : cone_orders) s += Real(1) - Real(1) / Real(n);
  return 2 * real_pi() * s;
}

std::string to_string(const Signature& s) {
  std::string out = "(" + std::to_string(s.genus) + "; ";
  if (s.cone_orders.empty()) out += "-";
  for (std::size_t i = 0; i < s.cone_orders.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(s.cone_orders[i]);
  }
  return out + "; " + std::to_string(s.cusps) + ")";
}

template <class F>
bool FundamentalDomain<F>::contains_interior(const Point<F>& p) const {
  return std::all_of(sides.begin(), sides.end(), [&](const Side<F>& s) { return s.half.side(p) > 0; });
}

template <class F>
bool FundamentalDomain<F>::contains(const Point<F>& p) const {
  return std::all_of(sides.begin(), sides.end(), [&](const Side<F>& s) { return s.half.side(p) >= 0; });
}

namespace {

constexpr int kBottom = -1;
constexpr int kRight = -2;
constexpr int kTop = -3;
constexpr int kLeft = -4;

template <class F>
struct Candidate {
  HalfPlane<F> half;
  SideOrigin origin;
  Moebius<F> source;  // maps the side lying on this line to its partner
  Word word;
  double ds = 0, dt = 0, d0 = 0;
};

// vertex of the clipped polygon in (s, t) = (x, x^2 + y^2); label names the
// line carrying the outgoing edge
template <class F>
struct PV {
  F s, t;
  int label;
  double ds, dt;
};

template <class F>
PV<F> make_pv(F s, F t, int label) {
  const double ds = to_double(s), dt = to_double(t);
  return PV<F>{std::move(s), std::move(t), label, ds, dt};
}

template <class F>
std::vector<PV<F>> clip(const std::vector<PV<F>>& poly, const HalfPlane<F>& h, int label) {
  const std::size_t n = poly.size();
  std::vector<F> val(n);
  std::vector<int> sg(n);
  for (std::size_t i = 0; i < n; ++i) {
    val[i] = h.cs * poly[i].s + h.ct * poly[i].t + h.c0;
    sg[i] = sgn(val[i]);
  }
  std::vector<PV<F>> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const PV<F>& p = poly[i];
    if (sg[i] >= 0) {
      if (sg[j] >= 0) {
        out.push_back(p);
      } else if (sg[i] > 0) {
        out.push_back(p);
        const F lam = val[i] / (val[i] - val[j]);
        out.push_back(make_pv(F(p.s + lam * (poly[j].s - p.s)), F(p.t + lam * (poly[j].t - p.t)), label));
      } else {
        PV<F> q = p;
        q.label = label;
        out.push_back(q);
      }
    } else if (sg[j] > 0) {
      const F lam = val[i] / (val[i] - val[j]);
      out.push_back(make_pv(F(p.s + lam * (poly[j].s - p.s)), F(p.t + lam * (poly[j].t - p.t)), p.label));
    }
  }
  // drop zero-length edges
  bool changed = true;
  while (changed && out.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const PV<F>& a = out[i];
      const PV<F>& b = out[(i + 1) % out.size()];
      if (sgn(F(a.s - b.s)) == 0 && sgn(F(a.t - b.t)) == 0) {
        out.erase(out.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return out;
}

// true when the half-plane certainly keeps every vertex strictly inside
template <class F>
bool surely_inside(const std::vector<PV<F>>& poly, const Candidate<F>& c) {
  for (const auto& v : poly) {
    const double val = c.ds * v.ds + c.dt * v.dt + c.d0;
    const double scale = std::abs(c.ds * v.ds) + std::abs(c.dt * v.dt) + std::abs(c.d0) + 1.0;
    if (!(val > 1e-9 * scale)) return false;
  }
  return true;
}

enum class ClipStatus { ok, grow, funnel };

template <class F>
struct Polygon {
  std::vector<Point<F>> points;
  std::vector<int> labels;  // candidate index carrying side i
};

template <class F>
ClipStatus clip_all(const std::vector<Candidate<F>>& cands, const F& M, Polygon<F>& out) {
  std::vector<PV<F>> poly{make_pv(F(-M), F(-1), kBottom), make_pv(M, F(-1), kRight), make_pv(M, M, kTop),
                          make_pv(F(-M), M, kLeft)};
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (surely_inside(poly, cands[i])) continue;
    poly = clip(poly, cands[i].half, static_cast<int>(i));
    if (poly.size() < 2) return ClipStatus::funnel;
  }
  // the only box edge allowed is the top one, between two vertical lines
  const std::size_t n = poly.size();
  int top = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i].label >= 0) continue;
    if (poly[i].label != kTop || top >= 0) return ClipStatus::grow;
    top = static_cast<int>(i);
  }
  std::vector<Point<F>> pts;
  std::vector<int> labels;
  if (top >= 0) {
    const std::size_t before = (static_cast<std::size_t>(top) + n - 1) % n;
    const std::size_t after = (static_cast<std::size_t>(top) + 1) % n;
    if (!cands[static_cast<std::size_t>(poly[before].label)].half.is_vertical() ||
        !cands[static_cast<std::size_t>(poly[after].label)].half.is_vertical()) {
      return ClipStatus::grow;
    }
    // start the list at infinity: inf, then the vertex after the top edge ...
    pts.push_back(Point<F>::infinity());
    labels.push_back(poly[after].label);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const std::size_t i = (after + k) % n;
      pts.push_back(Point<F>{poly[i].s, F(poly[i].t - poly[i].s * poly[i].s), false});
      labels.push_back(poly[i].label);
    }
  } else {
    for (const auto& v : poly) {
      pts.push_back(Point<F>{v.s, F(v.t - v.s * v.s), false});
      labels.push_back(v.label);
    }
  }
  for (auto& p : pts) {
    if (p.at_infinity) continue;
    const int s = sgn(p.Y);
    if (s < 0) return ClipStatus::funnel;
    if (s == 0) p.Y = F(0);
  }
  out.points = std::move(pts);
  out.labels = std::move(labels);
  return ClipStatus::ok;
}

template <class F>
Polygon<F> build_polygon(const std::vector<Candidate<F>>& cands, int depth) {
  F M(16);
  for (int round = 0; round < 12; ++round, M = M * F(4)) {
    Polygon<F> poly;
    const ClipStatus st = clip_all(cands, M, poly);
    if (st == ClipStatus::ok) return poly;
    if (st == ClipStatus::funnel) break;
  }
  throw Unverified(depth, "the enumerated half-planes do not cut out a finite-area polygon");
}

struct Context {
  bool ford = false;
  int depth = 0;
};

// h with h(a.start) = b.end and h(a.end) = b.start, allowing a strip
// translation for Ford domains
template <class F>
std::optional<std::pair<Moebius<F>, long>> match(const Moebius<F>& g, const Side<F>& a, const Side<F>& b,
                                                 const FundamentalDomain<F>& dom) {
  const Point<F> p = g.apply(a.start);
  const Point<F> q = g.apply(a.end);
  long k = 0;
  if (dom.kind == DomainKind::ford) {
    std::optional<F> diff;
    if (!p.at_infinity && !b.end.at_infinity) {
      diff = b.end.x - p.x;
    } else if (!q.at_infinity && !b.start.at_infinity) {
      diff = b.start.x - q.x;
    }
    if (diff) {
      const F ratio = *diff / dom.width;
      if (!is_integral(ratio)) return std::nullopt;
      k = floor_exact(ratio).get_si();
    }
  }
  const Moebius<F> h = k == 0 ? g : dom.translation().pow(k) * g;
  if (!(h.apply(a.start) == b.end) || !(h.apply(a.end) == b.start)) return std::nullopt;
  return std::make_pair(h, k);
}

template <class F>
void pair_sides(FundamentalDomain<F>& dom, const std::vector<Moebius<F>>& sources, bool allow_self,
                std::vector<int>& self_paired) {
  const std::size_t n = dom.sides.size();
  self_paired.clear();
  for (std::size_t i = 0; i < n; ++i) {
    Side<F>& s = dom.sides[i];
    s.partner = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i && !allow_self) continue;
      auto m = match(sources[i], s, dom.sides[j], dom);
      if (!m) continue;
      s.pairing = m->first;
      if (m->second != 0) s.word = concat(word_pow(dom.translation_word, m->second), s.word);
      s.partner = static_cast<int>(j);
      if (j == i) self_paired.push_back(static_cast<int>(i));
      break;
    }
    if (s.partner < 0) {
      throw Unverified(dom.depth, "side " + std::to_string(i) + " on " + to_string(s.geodesic) +
                                      " is not mapped onto another side");
    }
  }
}

template <class F>
void assemble(FundamentalDomain<F>& dom, const std::vector<Candidate<F>>& cands) {
  const Polygon<F> poly = build_polygon(cands, dom.depth);
  const std::size_t n = poly.points.size();
  std::vector<Moebius<F>> sources;
  dom.sides.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const Candidate<F>& c = cands[static_cast<std::size_t>(poly.labels[i])];
    Side<F> s;
    s.half = c.half;
    s.geodesic = Geodesic<F>::of(c.half);
    s.start = poly.points[i];
    s.end = poly.points[(i + 1) % n];
    s.origin = c.origin;
    s.word = c.word;
    dom.sides.push_back(s);
    sources.push_back(c.source);
  }

  std::vector<int> self;
  pair_sides(dom, sources, true, self);
  if (!self.empty()) {
    // a side paired with itself is split at the fixed point of its involution;
    // pairings found so far already carry any strip translation
    std::vector<Side<F>> split;
    sources.clear();
    for (std::size_t i = 0; i < dom.sides.size(); ++i) {
      const Side<F>& s = dom.sides[i];
      if (std::find(self.begin(), self.end(), static_cast<int>(i)) == self.end()) {
        split.push_back(s);
        sources.push_back(s.pairing);
        continue;
      }
      const Moebius<F>& h = s.pairing;
      if (sgn(h.c()) == 0 || sgn(h.trace()) != 0) {
        throw Unverified(dom.depth, "side " + std::to_string(i) + " is paired with itself by a non-involution");
      }
      const F c2 = h.c() * h.c();
      const Point<F> fix{F((h.a() - h.d()) / (F(2) * h.c())), F((F(4) - h.trace() * h.trace()) / (F(4) * c2)),
                         false};
      if (s.half.side(fix) != 0) throw Inconsistent("involution fixed point is off its side");
      Side<F> first = s, second = s;
      first.end = fix;
      second.start = fix;
      split.push_back(first);
      split.push_back(second);
      sources.push_back(h);
      sources.push_back(h);
    }
    dom.sides = std::move(split);
    pair_sides(dom, sources, false, self);
  }

  for (std::size_t i = 0; i < dom.sides.size(); ++i) {
    const Side<F>& s = dom.sides[i];
    const Side<F>& t = dom.sides[static_cast<std::size_t>(s.partner)];
    if (t.partner != static_cast<int>(i) || !(t.pairing == s.pairing.inverse())) {
      throw Unverified(dom.depth, "side pairing of side " + std::to_string(i) + " is not mutual");
    }
  }
}

template <class F>
void compute_cycles(FundamentalDomain<F>& dom) {
  const std::size_t n = dom.sides.size();
  dom.vertices.assign(n, Vertex<F>{});
  for (std::size_t i = 0; i < n; ++i) {
    const Side<F>& prev = dom.sides[(i + n - 1) % n];
    const Side<F>& cur = dom.sides[i];
    dom.vertices[i].point = cur.start;
    dom.vertices[i].angle = interior_angle(prev.half, cur.half, cur.start);
  }
  dom.cycles.clear();
  std::vector<bool> seen(n, false);
  const Real two_pi = 2 * real_pi();
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    VertexCycle<F> cyc;
    std::size_t cur = i;
    for (std::size_t step = 0;; ++step) {
      if (step > n || seen[cur]) throw Inconsistent("vertex cycle walk does not close");
      seen[cur] = true;
      cyc.members.push_back(static_cast<int>(cur));
      cyc.angle_sum += dom.vertices[cur].angle;
      const Side<F>& s = dom.sides[cur];
      cyc.transform = s.pairing * cyc.transform;
      cur = (static_cast<std::size_t>(s.partner) + 1) % n;
      if (cur == i) break;
    }
    cyc.ideal = dom.vertices[i].point.is_ideal();
    if (cyc.ideal) {
      if (cyc.transform.classify().kind != MapKind::parabolic) {
        throw Unverified(dom.depth, "ideal vertex cycle at " + to_string(dom.vertices[i].point) +
                                        " has a non-parabolic cycle transformation");
      }
    } else {
      const Real ratio = two_pi / cyc.angle_sum;
      const Real s = bm::round(ratio);
      const long order = s.convert_to<long>();
      if (order < 1 || order > 1000 || bm::abs(cyc.angle_sum * s - two_pi) > Real(1e-20) ||
          !cyc.transform.pow(order).is_identity()) {
        throw Unverified(dom.depth, "vertex cycle at " + to_string(dom.vertices[i].point) +
                                        " has angle sum " + to_string(cyc.angle_sum, 20) +
                                        ", not 2pi/s with an exact cycle relation");
      }
      cyc.order = order;
      if (dom.kind == DomainKind::ford) {
        for (int m : cyc.members) {
          if (sgn(F(dom.vertices[static_cast<std::size_t>(m)].point.Y - dom.vertices[i].point.Y)) != 0) {
            cyc.equal_heights = false;
          }
        }
      }
    }
    dom.cycles.push_back(std::move(cyc));
  }
}

template <class F>
void verify_generators(const FundamentalDomain<F>& dom) {
  for (std::size_t i = 0; i < dom.generators.size(); ++i) {
    const Reduction<F> r = reduce(dom.generators[i], dom);
    if (!r.identity()) {
      throw Unverified(dom.depth, "generator " + std::to_string(i + 1) + " is not generated by the side pairings");
    }
  }
}

template <class F>
void finish(FundamentalDomain<F>& dom, const std::vector<Candidate<F>>& cands) {
  assemble(dom, cands);
  compute_cycles(dom);
  verify_generators(dom);
  (void)signature(dom);
}

template <class F>
Candidate<F> candidate(HalfPlane<F> h, SideOrigin o, Moebius<F> src, Word w) {
  Candidate<F> c{std::move(h), o, std::move(src), std::move(w)};
  c.ds = to_double(c.half.cs);
  c.dt = to_double(c.half.ct);
  c.d0 = to_double(c.half.c0);
  return c;
}

}  // namespace

template <class F>
FundamentalDomain<F> ford_domain(const std::vector<Moebius<F>>& gens, const FordOptions<F>& opts) {
  if (opts.depth < 1) throw std::invalid_argument("depth must be >= 1");
  FundamentalDomain<F> dom;
  dom.kind = DomainKind::ford;
  dom.depth = opts.depth;
  dom.generators = gens;
  const auto elements = enumerate_words(gens, opts.depth);

  // translation subgroup: Euclid on the translation lengths found
  std::optional<std::pair<F, Word>> w;
  for (const auto& e : elements) {
    if (sgn(e.map.c()) != 0) continue;
    if (sgn(F(e.map.a() - F(1))) != 0 || sgn(F(e.map.d() - F(1))) != 0) {
      throw std::invalid_argument("hyperbolic element fixing infinity: " + to_string(e.map));
    }
    std::pair<F, Word> v{e.map.b(), e.word};
    if (sgn(v.first) < 0) v = {F(-v.first), inverse(v.second)};
    if (!w) {
      w = v;
      continue;
    }
    for (int guard = 0; sgn(v.first) != 0; ++guard) {
      if (guard > 200) throw std::invalid_argument("translation lengths are incommensurable");
      const Integer q = floor_exact(F(w->first / v.first));
      std::pair<F, Word> r{F(w->first - scale(v.first, q)), concat(w->second, word_pow(inverse(v.second), q.get_si()))};
      w = v;
      v = r;
    }
  }
  if (!w) throw NoParabolicAtInfinity();
  dom.width = w->first;
  dom.translation_word = w->second;
  dom.x0 = opts.x0 ? *opts.x0 : F(-dom.width / F(2));
  const Moebius<F> T = dom.translation();

  std::vector<Candidate<F>> cands;
  cands.push_back(candidate(HalfPlane<F>{F(1), F(0), F(-dom.x0)}, SideOrigin::strip, T, dom.translation_word));
  cands.push_back(candidate(HalfPlane<F>{F(-1), F(0), F(dom.x0 + dom.width)}, SideOrigin::strip, T.inverse(),
                            inverse(dom.translation_word)));

  struct Circle {
    F center, rho;
    Moebius<F> h;
    Word word;
  };
  std::vector<Circle> circles;
  std::set<std::string> seen;
  for (const auto& e : elements) {
    if (sgn(e.map.c()) == 0) continue;
    const IsometricCircle<F> ic = isometric_circle(e.map);
    if (sgn(F(ic.radius - dom.width)) > 0) {
      throw std::invalid_argument("isometric circle of radius " + to_string(ic.radius) +
                                  " exceeds the cusp width (Shimizu): the group is not discrete");
    }
    const Integer k = floor_exact(F((ic.center - dom.x0) / dom.width));
    // h T^j has its circle moved by -j*width
    for (long j : {k.get_si(), k.get_si() - 1, k.get_si() + 1}) {
      const Moebius<F> h = e.map * T.pow(j);
      const Word hw = concat(e.word, word_pow(dom.translation_word, j));
      const F c = ic.center - scale(dom.width, Integer(j));
      const F rho = ic.radius * ic.radius;
      if (!seen.insert(key_of(c) + "|" + key_of(rho)).second) continue;
      circles.push_back({c, rho, h, hw});
    }
  }
  std::stable_sort(circles.begin(), circles.end(), [](const Circle& a, const Circle& b) {
    const int s = sgn(F(a.rho - b.rho));
    if (s != 0) return s > 0;
    return sgn(F(a.center - b.center)) < 0;
  });
  for (const auto& c : circles) {
    cands.push_back(candidate(Geodesic<F>::semicircle(c.center, c.rho).outer(), SideOrigin::circle, c.h, c.word));
  }
  finish(dom, cands);
  return dom;
}

template <class F>
FundamentalDomain<F> dirichlet_domain(const std::vector<Moebius<F>>& gens, const F& cx, const F& cy, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (sgn(cy) <= 0) throw std::invalid_argument("dirichlet centre must lie in the upper half-plane");
  FundamentalDomain<F> dom;
  dom.kind = DomainKind::dirichlet;
  dom.depth = depth;
  dom.generators = gens;
  dom.cx = cx;
  dom.cy = cy;
  const Point<F> z0 = dom.center();
  const F mod0 = cx * cx + cy * cy;

  std::vector<Candidate<F>> cands;
  std::set<std::string> seen;
  for (const auto& e : enumerate_words(gens, depth)) {
    const Moebius<F>& g = e.map;
    const Point<F> w = g.apply(z0);
    if (w == z0) throw CenterIsFixedPoint();
    if (!seen.insert(key_of(w)).second) continue;
    // image height y_w = cy / |c z0 + d|^2
    const F nrm = g.c() * g.c() * mod0 + F(2) * g.c() * g.d() * cx + g.d() * g.d();
    const F yw = cy / nrm;
    const F modw = w.x * w.x + w.Y;
    // closer to z0:  cy |p - w|^2 - yw |p - z0|^2 >= 0
    HalfPlane<F> h{F(F(-2) * cy * w.x + F(2) * yw * cx), F(cy - yw), F(cy * modw - yw * mod0)};
    cands.push_back(candidate(h, SideOrigin::bisector, g.inverse(), inverse(e.word)));
  }
  finish(dom, cands);
  return dom;
}

template <class F>
Real area(const FundamentalDomain<F>& dom) {
  Real s = 0;
  for (const auto& v : dom.vertices) s += v.angle;
  return Real(static_cast<long>(dom.vertices.size()) - 2) * real_pi() - s;
}

template <class F>
Signature signature(const FundamentalDomain<F>& dom) {
  long finite = 0, ideal = 0;
  Signature sig;
  for (const auto& c : dom.cycles) {
    if (c.ideal) {
      ++ideal;
    } else {
      ++finite;
      if (c.order >= 2) sig.cone_orders.push_back(c.order);
    }
  }
  std::sort(sig.cone_orders.begin(), sig.cone_orders.end());
  const long e = static_cast<long>(dom.sides.size()) / 2;
  const long twice_genus = 1 + e - finite - ideal;
  if (twice_genus < 0 || twice_genus % 2 != 0) {
    throw Inconsistent("Euler characteristic gives a non-integral genus");
  }
  sig.genus = twice_genus / 2;
  sig.cusps = ideal;
  const Real a = area(dom);
  if (bm::abs(a - sig.area()) > Real(1e-20)) {
    throw Inconsistent("Gauss-Bonnet area " + to_string(a, 20) + " differs from the signature area " +
                       to_string(sig.area(), 20));
  }
  return sig;
}

template <class F>
std::vector<std::vector<Point<F>>> cusp_classes(const FundamentalDomain<F>& dom) {
  std::vector<std::vector<Point<F>>> out;
  for (const auto& c : dom.cycles) {
    if (!c.ideal) continue;
    std::vector<Point<F>> cls;
    for (int m : c.members) cls.push_back(dom.vertices[static_cast<std::size_t>(m)].point);
    out.push_back(std::move(cls));
  }
  return out;
}

template <class F>
bool same_domain(const FundamentalDomain<F>& p, const FundamentalDomain<F>& q) {
  if (p.sides.size() != q.sides.size()) return false;
  std::vector<bool> used(q.sides.size(), false);
  for (const auto& s : p.sides) {
    bool found = false;
    for (std::size_t j = 0; j < q.sides.size(); ++j) {
      const auto& t = q.sides[j];
      if (used[j] || !(s.geodesic == t.geodesic) || !(s.start == t.start) || !(s.end == t.end) ||
          !(s.pairing == t.pairing)) {
        continue;
      }
      used[j] = true;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return true;
}

template <class F>
Point<F> default_base_point(const FundamentalDomain<F>& dom) {
  if (dom.kind == DomainKind::dirichlet) return dom.center();
  F rho(0);
  for (const auto& s : dom.sides) {
    if (!s.geodesic.is_vertical() && sgn(F(s.geodesic.rho - rho)) > 0) rho = s.geodesic.rho;
  }
  const F golden = from_rational<F>(Rational(1618, 1000));
  Point<F> p{F(dom.x0 + from_rational<F>(Rational(437, 1000)) * dom.width), F(golden * golden * rho), false};
  if (sgn(rho) == 0) p.Y = F(1);
  // keep it off every side; raise it if it happens to sit on one
  for (int i = 0; i < 64 && !dom.contains_interior(p); ++i) p.Y = p.Y * F(2);
  return p;
}

template <class F>
Reduction<F> reduce(const Moebius<F>& g, const FundamentalDomain<F>& dom, const Point<F>& base, long budget) {
  Reduction<F> out;
  Point<F> p = g.apply(base);
  if (p.is_ideal()) throw std::invalid_argument("reduce: base point must be interior");
  Moebius<F> h;
  const bool ford = dom.kind == DomainKind::ford;
  auto push = [&](int side, long k) {
    if (!out.word.empty() && out.word.back().first == side) {
      out.word.back().second += k;
      if (out.word.back().second == 0) out.word.pop_back();
    } else {
      out.word.emplace_back(side, k);
    }
  };
  // Dirichlet potential, monotone in the distance to the centre
  auto spread = [&](const Point<F>& q) {
    const F dx = q.x - dom.cx;
    const F num = dx * dx + q.Y + dom.cy * dom.cy;
    return F(num * num / q.Y);
  };
  for (long step = 0; step < budget; ++step) {
    if (ford) {
      const Integer k = floor_exact(F((p.x - dom.x0) / dom.width));
      if (k != 0) {
        const Moebius<F> t = dom.translation().pow(-k.get_si());
        p = t.apply(p);
        h = t * h;
        push(-1, -k.get_si());
      }
    }
    int best = -1;
    Point<F> best_p;
    F best_score{};
    for (std::size_t i = 0; i < dom.sides.size(); ++i) {
      const Side<F>& s = dom.sides[i];
      if (s.half.side(p) >= 0) continue;
      const Point<F> q = s.pairing.apply(p);
      const F score = ford ? q.Y : F(-spread(q));
      if (best < 0 || sgn(F(score - best_score)) > 0) {
        best = static_cast<int>(i);
        best_p = q;
        best_score = score;
      }
    }
    if (best < 0) {
      out.residual = h * g;
      return out;
    }
    p = best_p;
    h = dom.sides[static_cast<std::size_t>(best)].pairing * h;
    push(best, 1);
  }
  throw ReductionBudget();
}

#define DFD_INSTANTIATE(F)                                                                                 \
  template Moebius<F> evaluate(const Word&, const std::vector<Moebius<F>>&);                               \
  template std::vector<Element<F>> enumerate_words(const std::vector<Moebius<F>>&, int);                   \
  template struct FundamentalDomain<F>;                                                                    \
  template FundamentalDomain<F> ford_domain(const std::vector<Moebius<F>>&, const FordOptions<F>&);       \
  template FundamentalDomain<F> dirichlet_domain(const std::vector<Moebius<F>>&, const F&, const F&, int); \
  template Real area(const FundamentalDomain<F>&);                                                         \
  template Signature signature(const FundamentalDomain<F>&);                                               \
  template std::vector<std::vector<Point<F>>> cusp_classes(const FundamentalDomain<F>&);                   \
  template bool same_domain(const FundamentalDomain<F>&, const FundamentalDomain<F>&);                     \
  template Point<F> default_base_point(const FundamentalDomain<F>&);                                       \
  template Reduction<F> reduce(const Moebius<F>&, const FundamentalDomain<F>&, const Point<F>&, long);

DFD_INSTANTIATE(QuadRat)
DFD_INSTANTIATE(Real)

}  // namespace dfd
