#include "doctest.h"

#include "dfdom/io.hpp"
#include "fixtures.hpp"

#include <regex>

using namespace dfd;

namespace {

std::string data(const std::string& name) { return std::string(DFD_DATA_DIR) + "/" + name + ".json"; }

}  // namespace

TEST_CASE("bundled group files match the fixtures") {
  CHECK(read_group(data("modular")).fuchsian == fx::modular());
  CHECK(read_group(data("gamma11")).fuchsian == fx::gamma11());
  CHECK(read_group(data("g_intersection")).fuchsian == fx::g_intersection());
  CHECK(read_group(data("ngamma0_11")).fuchsian == fx::ngamma0_11());
  const GroupFile k = read_group(data("kleinian_example"));
  CHECK(k.kind == "kleinian");
  CHECK(k.kleinian == fx::kleinian_example());
  CHECK(read_group(data("figure8")).kleinian == fx::figure8());
}

TEST_CASE("group files round-trip") {
  for (const char* name : {"gamma11", "kleinian_example"}) {
    const GroupFile g = read_group(data(name));
    const Json j = group_json(g);
    CHECK(group_json(parse_group(j)).dump() == j.dump());
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(read_group("/nonexistent/file.json"), ParseError);
  CHECK_THROWS_AS(parse_group(Json::parse(R"({"generators": []})")), ParseError);
  CHECK_THROWS_AS(parse_group(Json::parse(R"({"generators": [[1, 2, 3]]})")), ParseError);
  CHECK_THROWS_AS(parse_group(Json::parse(R"({"generators": [["1", "x", "0", "1"]]})")), ParseError);
  CHECK_THROWS_AS(parse_group(Json::parse(R"({"generators": [[0, 1, 1, 0]]})")), ParseError);
  CHECK_THROWS_AS(parse_group(Json::parse(R"({"kind": "other", "generators": [[1, 0, 0, 1]]})")), ParseError);
  CHECK(parse_pair("0,2") == std::pair<QuadRat, QuadRat>(0, 2));
  CHECK(parse_pair("1/5,0+1*sqrt(2)").second == QuadRat::root(2));
  CHECK_THROWS_AS(parse_pair("1"), ParseError);
  CHECK(parse_signature("(0; 2, 3; 1)") == Signature{0, {2, 3}, 1});
  CHECK(parse_signature("(0;-;3)") == Signature{0, {}, 3});
  CHECK_THROWS_AS(parse_signature("(0; 2)"), ParseError);
}

TEST_CASE("domain output is deterministic") {
  const auto a = domain_json(ford_domain(fx::gamma11(), 2), 128).dump(2);
  const auto b = domain_json(ford_domain(fx::gamma11(), 2), 128).dump(2);
  CHECK(a == b);
  const Json j = Json::parse(a);
  CHECK(j["sides"].size() == 10);
  CHECK(j["signature"] == "(0; 2, 2, 2, 2; 2)");
  CHECK(j["sides"][0]["geodesic"]["kind"] == "vertical");
}

TEST_CASE("svg output") {
  const auto dom = ford_domain(fx::gamma11(), 2);
  const std::string svg = domain_svg(dom, std::optional<Geodesic<QuadRat>>(Geodesic<QuadRat>::vertical(0)));
  const std::regex path("<path ");
  const auto n = std::distance(std::sregex_iterator(svg.begin(), svg.end(), path), std::sregex_iterator());
  CHECK(n == static_cast<long>(dom.sides.size()));
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.rfind("<?xml", 0) == 0);
  // strip [-1/2, 1/2] padded by 10%: 1.2 units wide, 1.5 units high
  CHECK(svg.find("width=\"360.00\" height=\"450.00\"") != std::string::npos);
}
