#include "dfdom/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dfd {

namespace {

QuadRat quad_from(const Json& j, const char* what) {
  try {
    return parse_quad(j);
  } catch (const ParseError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  std::string s = os.str();
  return s == "-0.00" ? "0.00" : s;
}

std::string real_digits(const Real& x, unsigned bits) { return to_string(x, std::min(digits_for(bits), 38)); }

}  // namespace

QuadRat parse_quad(const Json& j) {
  if (j.is_number_integer()) return QuadRat(j.get<long>());
  if (!j.is_string()) throw ParseError("expected a number or a canonical string, got " + j.dump());
  try {
    return parse_quadrat(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

Complex parse_complex(const Json& j) {
  if (j.is_object()) {
    if (!j.contains("re") || !j.contains("im")) throw ParseError("complex entry needs \"re\" and \"im\"");
    return Complex(quad_from(j.at("re"), "re"), quad_from(j.at("im"), "im"));
  }
  return Complex(parse_quad(j));
}

GroupFile parse_group(const Json& j) {
  if (!j.is_object()) throw ParseError("group file must be a JSON object");
  GroupFile g;
  g.name = j.value("name", "");
  g.kind = j.value("kind", "fuchsian");
  if (g.kind != "fuchsian" && g.kind != "kleinian") throw ParseError("unknown kind \"" + g.kind + "\"");
  if (!j.contains("generators") || !j.at("generators").is_array() || j.at("generators").empty()) {
    throw ParseError("\"generators\" must be a nonempty array");
  }
  for (const Json& e : j.at("generators")) {
    const Json& m = e.is_object() ? e.value("matrix", Json()) : e;
    if (!m.is_array() || m.size() != 4) throw ParseError("each matrix must list 4 entries [a, b, c, d]");
    g.labels.push_back(e.is_object() ? e.value("label", "") : "");
    try {
      if (g.kind == "fuchsian") {
        g.fuchsian.emplace_back(parse_quad(m[0]), parse_quad(m[1]), parse_quad(m[2]), parse_quad(m[3]));
      } else {
        g.kleinian.emplace_back(parse_complex(m[0]), parse_complex(m[1]), parse_complex(m[2]), parse_complex(m[3]));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError("generator " + std::to_string(g.labels.size()) + ": " + ex.what());
    }
  }
  return g;
}

GroupFile read_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_group(j);
}

Json group_json(const GroupFile& g) {
  Json out{{"name", g.name}, {"kind", g.kind}, {"generators", Json::array()}};
  const std::size_t n = g.kind == "fuchsian" ? g.fuchsian.size() : g.kleinian.size();
  for (std::size_t i = 0; i < n; ++i) {
    Json e{{"label", i < g.labels.size() ? g.labels[i] : ""}};
    e["matrix"] = g.kind == "fuchsian" ? matrix_json(g.fuchsian[i]) : matrix_json(g.kleinian[i]);
    out["generators"].push_back(e);
  }
  return out;
}

std::pair<QuadRat, QuadRat> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("expected \"x,y\", got \"" + text + "\"");
  return {parse_quad(Json(text.substr(0, comma))), parse_quad(Json(text.substr(comma + 1)))};
}

Signature parse_signature(const std::string& text) {
  // "(g; n1, n2, ...; m)" with "-" or nothing for no cone points
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '(' && ch != ')') s += ch;
  }
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ';');) parts.push_back(part);
  if (parts.size() != 3) throw ParseError("signature must look like (g; n1, ..., nt; m)");
  Signature sig;
  try {
    sig.genus = std::stol(parts[0]);
    if (!parts[1].empty() && parts[1] != "-") {
      std::stringstream cs(parts[1]);
      for (std::string c; std::getline(cs, c, ',');) sig.cone_orders.push_back(std::stol(c));
    }
    sig.cusps = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw ParseError("bad number in signature \"" + text + "\"");
  }
  std::sort(sig.cone_orders.begin(), sig.cone_orders.end());
  return sig;
}

int digits_for(unsigned bits) { return static_cast<int>(std::floor(bits * 0.30102999566398)); }

Json quad_json(const QuadRat& x, unsigned bits) {
  if (x.is_rational()) return to_string(x);
  return Json{{"exact", to_string(x)}, {"approx", approx(x, bits).value.str(digits_for(bits))}};
}

Json matrix_json(const Moebius<QuadRat>& g) {
  return Json::array({to_string(g.a()), to_string(g.b()), to_string(g.c()), to_string(g.d())});
}

Json matrix_json(const CMoebius& g) {
  Json out = Json::array();
  for (const Complex* z : {&g.a(), &g.b(), &g.c(), &g.d()}) out.push_back(Json{{"re", to_string(z->re)}, {"im", to_string(z->im)}});
  return out;
}

namespace {

Json value_json(const QuadRat& x, unsigned) { return to_string(x); }
Json value_json(const Real& x, unsigned bits) { return real_digits(x, bits); }
Json matrix_any(const Moebius<QuadRat>& g, unsigned) { return matrix_json(g); }
Json matrix_any(const Moebius<Real>& g, unsigned bits) {
  return Json::array({real_digits(g.a(), bits), real_digits(g.b(), bits), real_digits(g.c(), bits), real_digits(g.d(), bits)});
}

}  // namespace

template <class F>
Json point_json(const Point<F>& p, unsigned bits) {
  if (p.at_infinity) return "infinity";
  return Json{{"x", value_json(p.x, bits)}, {"y_squared", value_json(p.Y, bits)}, {"y", real_digits(p.real_y(), bits)}};
}

template <class F>
Json geodesic_json(const Geodesic<F>& g, unsigned bits) {
  if (g.is_vertical()) return Json{{"kind", "vertical"}, {"x", value_json(g.x, bits)}};
  return Json{{"kind", "semicircle"}, {"center", value_json(g.center, bits)}, {"radius_squared", value_json(g.rho, bits)}};
}

template <class F>
Json domain_json(const FundamentalDomain<F>& dom, unsigned bits) {
  Json out{{"kind", dom.kind == DomainKind::ford ? "ford" : "dirichlet"}, {"depth", dom.depth}};
  if (dom.kind == DomainKind::ford) {
    out["strip"] = Json{{"x0", value_json(dom.x0, bits)}, {"width", value_json(dom.width, bits)}};
  } else {
    out["center"] = point_json(dom.center(), bits);
  }
  Json sides = Json::array();
  for (const auto& s : dom.sides) {
    sides.push_back(Json{{"geodesic", geodesic_json(s.geodesic, bits)},
                         {"start", point_json(s.start, bits)},
                         {"end", point_json(s.end, bits)},
                         {"partner", s.partner},
                         {"pairing", matrix_any(s.pairing, bits)},
                         {"word", to_string(s.word)}});
  }
  out["sides"] = sides;
  Json verts = Json::array();
  for (const auto& v : dom.vertices) {
    verts.push_back(Json{{"point", point_json(v.point, bits)}, {"angle", real_digits(v.angle, bits)}});
  }
  out["vertices"] = verts;
  Json cycles = Json::array();
  for (const auto& c : dom.cycles) {
    Json e{{"members", c.members}, {"ideal", c.ideal}};
    if (!c.ideal) e["order"] = c.order;
    e["angle_sum"] = real_digits(c.angle_sum, bits);
    cycles.push_back(e);
  }
  out["cycles"] = cycles;
  const Signature sig = signature(dom);
  out["signature"] = to_string(sig);
  out["area"] = real_digits(area(dom), bits);
  Json cusps = Json::array();
  for (const auto& cls : cusp_classes(dom)) {
    Json c = Json::array();
    for (const auto& p : cls) c.push_back(point_json(p, bits));
    cusps.push_back(c);
  }
  out["cusp_classes"] = cusps;
  return out;
}

template <class F>
Json mirror_json(const MirrorReport<F>& r, unsigned bits) {
  Json out{{"has_axis", r.has_axis}};
  if (r.has_axis) out["axis"] = geodesic_json(r.axis, bits);
  out["pairing_symmetric"] = r.pairing_symmetric;
  if (r.center_low) out["center_low"] = point_json(*r.center_low, bits);
  if (r.center_high) out["center_high"] = point_json(*r.center_high, bits);
  Json v = Json::array();
  for (const auto& m : r.violations) {
    v.push_back(Json{{"side", m.side},
                     {"partner", m.partner},
                     {"mirror", m.mirror},
                     {"involution", m.involution},
                     {"adjacent", m.adjacent}});
  }
  out["violations"] = v;
  out["why"] = r.why;
  return out;
}

template <class F>
Json polygon_json(const ReflectionPolygon<F>& q, unsigned bits) {
  Json sides = Json::array();
  for (const auto& h : q.sides) sides.push_back(geodesic_json(Geodesic<F>::of(h), bits));
  Json verts = Json::array();
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    verts.push_back(Json{{"point", point_json(q.vertices[i], bits)},
                         {"angle", q.angle_k[i] == 0 ? std::string("0") : "pi/" + std::to_string(q.angle_k[i])}});
  }
  return Json{{"sides", sides}, {"vertices", verts}, {"area", real_digits(q.area(), bits)}};
}

Json congruence_json(const CosetAction& act, const CongruenceReport& rep, bool emit_perms) {
  Json out{{"index", act.index}, {"level", rep.level}, {"verdict", to_string(rep.verdict)}, {"reason", rep.reason}};
  if (rep.verdict != Verdict::untested || rep.level > 1) {
    out["witness"] = rep.witness;
    out["witness_order"] = rep.witness_order;
  }
  out["cusp_widths"] = cycle_type(act.perm_L);
  const Integer core = perm_group_order({act.perm_L, act.perm_R});
  out["core_index"] = core.get_str();
  if (rep.level >= 2) {
    const Integer principal = principal_congruence_index(rep.level);
    out["principal_index"] = principal.get_str();
    out["core_exceeds_principal"] = core > principal;
  }
  if (emit_perms) {
    out["perm_L"] = cycles_string(act.perm_L);
    out["perm_R"] = cycles_string(act.perm_R);
  }
  return out;
}

Json kleinian_json(const DFCriterion& c) {
  Json out{{"pass", c.pass}, {"reason", c.reason}};
  if (c.axis) out["axis"] = Json{{"re", to_string(c.axis->re)}, {"im", to_string(c.axis->im)}};
  Json lat = Json::array();
  for (const Complex& z : c.lattice) lat.push_back(Json{{"re", to_string(z.re)}, {"im", to_string(z.im)}});
  out["lattice"] = lat;
  Json planes = Json::array();
  for (const auto& p : c.planes) planes.push_back(Json::array({to_string(p.alpha), to_string(p.beta), to_string(p.delta)}));
  out["planes"] = planes;
  return out;
}

std::string domain_text(const FundamentalDomain<QuadRat>& dom) {
  std::ostringstream os;
  os << (dom.kind == DomainKind::ford ? "Ford" : "Dirichlet") << " domain, " << dom.sides.size() << " sides\n";
  for (std::size_t i = 0; i < dom.sides.size(); ++i) {
    const auto& s = dom.sides[i];
    os << "  side " << i << ": " << to_string(s.geodesic) << " from " << to_string(s.start) << " to "
       << to_string(s.end) << ", paired with " << s.partner << " by " << to_string(s.pairing) << "\n";
  }
  for (const auto& c : dom.cycles) {
    os << "  cycle";
    for (int m : c.members) os << " " << to_string(dom.vertices[static_cast<std::size_t>(m)].point);
    os << (c.ideal ? " (ideal)" : " (order " + std::to_string(c.order) + ")") << "\n";
  }
  os << "  signature " << to_string(signature(dom)) << ", area " << to_string(area(dom), 20) << "\n";
  return os.str();
}

template <class F>
std::string domain_svg(const FundamentalDomain<F>& dom, const std::optional<Geodesic<F>>& axis) {
  constexpr double unit = 300, top = 1.5;
  double lo = 1e300, hi = -1e300;
  for (const auto& s : dom.sides) {
    for (const Point<F>* p : {&s.start, &s.end}) {
      if (p->at_infinity) continue;
      lo = std::min(lo, to_double(p->x));
      hi = std::max(hi, to_double(p->x));
    }
  }
  if (dom.kind == DomainKind::ford) {
    lo = std::min(lo, to_double(dom.x0));
    hi = std::max(hi, to_double(dom.x0 + dom.width));
  }
  if (!(lo < hi)) {
    lo = -1;
    hi = 1;
  }
  const double pad = 0.1 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double w = (hi - lo) * unit, h = top * unit;
  auto X = [&](double x) { return fmt((x - lo) * unit); };
  auto Yc = [&](double y) { return fmt((top - y) * unit); };
  auto ypos = [&](const Point<F>& p) { return p.at_infinity ? top : std::sqrt(std::max(0.0, to_double(p.Y))); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
     << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n"
     << "  <defs><clipPath id=\"strip\"><rect x=\"0\" y=\"0\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
     << "\"/></clipPath></defs>\n"
     << "  <line x1=\"0\" y1=\"" << fmt(h) << "\" x2=\"" << fmt(w) << "\" y2=\"" << fmt(h)
     << "\" stroke=\"#888\" stroke-width=\"1\"/>\n"
     << "  <g clip-path=\"url(#strip)\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\">\n";
  for (std::size_t i = 0; i < dom.sides.size(); ++i) {
    const auto& s = dom.sides[i];
    const double x1 = s.start.at_infinity ? to_double(s.end.x) : to_double(s.start.x);
    const double x2 = s.end.at_infinity ? to_double(s.start.x) : to_double(s.end.x);
    const double y1 = ypos(s.start), y2 = ypos(s.end);
    os << "    <path id=\"side" << i << "\" d=\"M " << X(x1) << " " << Yc(y1);
    if (s.geodesic.is_vertical()) {
      os << " L " << X(x2) << " " << Yc(y2);
    } else {
      const double r = std::sqrt(to_double(s.geodesic.rho)) * unit;
      os << " A " << fmt(r) << " " << fmt(r) << " 0 0 " << (x1 < x2 ? 1 : 0) << " " << X(x2) << " " << Yc(y2);
    }
    os << "\"/>\n";
  }
  os << "  </g>\n";
  if (axis) {
    os << "  <g clip-path=\"url(#strip)\" fill=\"none\" stroke=\"#c00\" stroke-width=\"1\" stroke-dasharray=\"6 4\">\n";
    if (axis->is_vertical()) {
      os << "    <line x1=\"" << X(to_double(axis->x)) << "\" y1=\"0\" x2=\"" << X(to_double(axis->x)) << "\" y2=\""
         << fmt(h) << "\"/>\n";
    } else {
      os << "    <circle cx=\"" << X(to_double(axis->center)) << "\" cy=\"" << fmt(h) << "\" r=\""
         << fmt(std::sqrt(to_double(axis->rho)) * unit) << "\"/>\n";
    }
    os << "  </g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

#define DFD_IO(F)                                                                                  \
  template Json point_json<F>(const Point<F>&, unsigned);                                          \
  template Json geodesic_json<F>(const Geodesic<F>&, unsigned);                                    \
  template Json domain_json<F>(const FundamentalDomain<F>&, unsigned);                             \
  template Json mirror_json<F>(const MirrorReport<F>&, unsigned);                                  \
  template Json polygon_json<F>(const ReflectionPolygon<F>&, unsigned);                            \
  template std::string domain_svg<F>(const FundamentalDomain<F>&, const std::optional<Geodesic<F>>&);
DFD_IO(QuadRat)
DFD_IO(Real)
#undef DFD_IO

}  // namespace dfd
