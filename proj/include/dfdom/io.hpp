#pragma once

#include "dfdom/domains.hpp"
#include "dfdom/kleinian.hpp"
#include "dfdom/modular.hpp"
#include "dfdom/symmetry.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dfd {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group file: {"name", "kind": "fuchsian" | "kleinian", "generators": [{"label", "matrix": [a, b, c, d]}]}.
/// Fuchsian entries are canonical QuadRat strings (or JSON integers);
/// Kleinian entries are {"re": ..., "im": ...}.
struct GroupFile {
  std::string name;
  std::string kind = "fuchsian";
  std::vector<std::string> labels;
  std::vector<Moebius<QuadRat>> fuchsian;
  std::vector<CMoebius> kleinian;
};

GroupFile parse_group(const Json& j);
GroupFile read_group(const std::string& path);
Json group_json(const GroupFile& g);

QuadRat parse_quad(const Json& j);
Complex parse_complex(const Json& j);
/// "x,y" with canonical QuadRat parts.
std::pair<QuadRat, QuadRat> parse_pair(const std::string& text);
Signature parse_signature(const std::string& text);

/// Decimal digits worth `bits` of precision.
int digits_for(unsigned bits);

Json quad_json(const QuadRat& x, unsigned bits);
Json matrix_json(const Moebius<QuadRat>& g);
Json matrix_json(const CMoebius& g);
template <class F>
Json point_json(const Point<F>& p, unsigned bits);
template <class F>
Json geodesic_json(const Geodesic<F>& g, unsigned bits);

template <class F>
Json domain_json(const FundamentalDomain<F>& dom, unsigned bits);
template <class F>
Json mirror_json(const MirrorReport<F>& r, unsigned bits);
template <class F>
Json polygon_json(const ReflectionPolygon<F>& q, unsigned bits);
Json congruence_json(const CosetAction& act, const CongruenceReport& rep, bool emit_perms);
Json kleinian_json(const DFCriterion& c);

std::string domain_text(const FundamentalDomain<QuadRat>& dom);

/// 300 px per unit, y flipped, clipped at height 1.5; one path per side and
/// an optional dashed axis.
template <class F>
std::string domain_svg(const FundamentalDomain<F>& dom, const std::optional<Geodesic<F>>& axis = std::nullopt);

}  // namespace dfd
