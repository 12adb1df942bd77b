// dfdom: fundamental domains, DF checks and congruence tests from the command line.
#include "dfdom/io.hpp"
#include "dfdom/reproduce.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace dfd;

namespace {

enum Status { ok = 0, failed = 1, input_error = 2, unverified = 3, inconsistent = 4 };

struct Config {
  std::string input;
  int depth = 4;
  unsigned bits = 128;
  std::string format = "json";
};

struct Options {
  Config cfg;
  std::string center, z1, z2, signature, oracle = "integral-intersection", data_dir = DFD_DATA_DIR;
  bool emit_perms = false;
};

void add_common(CLI::App* sub, Config& cfg, bool needs_input) {
  auto* in = sub->add_option("--input,--group", cfg.input, "group file (JSON)");
  if (needs_input) in->required();
  sub->add_option("--depth", cfg.depth, "maximum word length")->check(CLI::PositiveNumber);
  sub->add_option("--bits", cfg.bits, "precision of decimal approximations")->check(CLI::Range(64u, 4096u));
  sub->add_option("--format", cfg.format, "json, svg or text")->check(CLI::IsMember({"json", "svg", "text"}));
}

std::vector<Moebius<QuadRat>> fuchsian(const Config& cfg) {
  GroupFile g = read_group(cfg.input);
  if (g.kind != "fuchsian") throw ParseError(cfg.input + ": expected a fuchsian group");
  return g.fuchsian;
}

Point<QuadRat> interior_point(const std::string& text) {
  auto [x, y] = parse_pair(text);
  if (y <= QuadRat(0)) throw ParseError("point " + text + " is not in the upper half-plane");
  return Point<QuadRat>::interior(x, y);
}

// json and svg go to stdout as-is; text falls back to indented JSON where no text form exists
void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

template <class F>
void emit_domain(const FundamentalDomain<F>& dom, const Config& cfg, const std::optional<Geodesic<F>>& axis = {}) {
  if (cfg.format == "svg") {
    std::cout << domain_svg(dom, axis);
  } else if constexpr (std::is_same_v<F, QuadRat>) {
    if (cfg.format == "text") {
      std::cout << domain_text(dom);
      return;
    }
    emit(domain_json(dom, cfg.bits));
  } else {
    emit(domain_json(dom, cfg.bits));
  }
}

MembershipOracle make_oracle(const Options& o, std::optional<FundamentalDomain<QuadRat>>& keep) {
  const std::string& s = o.oracle;
  auto level_of = [&](std::size_t prefix) {
    try {
      std::size_t used = 0;
      const long n = std::stol(s.substr(prefix), &used);
      if (used + prefix != s.size() || n < 1) throw std::invalid_argument(s);
      return n;
    } catch (const std::logic_error&) {
      throw ParseError("bad oracle level in " + s);
    }
  };
  if (s.rfind("principal:", 0) == 0) return principal_congruence_oracle(level_of(10));
  if (s.rfind("gamma0:", 0) == 0) return gamma0_oracle(level_of(7));
  if (s != "integral-intersection") throw ParseError("unknown oracle " + s);
  if (o.cfg.input.empty()) throw ParseError("--oracle integral-intersection needs --input");
  keep = ford_domain(fuchsian(o.cfg), o.cfg.depth);
  return intersection_oracle(*keep);
}

int run(const std::string& cmd, const Options& o) {
  const Config& cfg = o.cfg;
  if (cmd == "ford") {
    emit_domain(ford_domain(fuchsian(cfg), cfg.depth), cfg);
  } else if (cmd == "dirichlet") {
    auto [cx, cy] = parse_pair(o.center);
    if (cy <= QuadRat(0)) throw ParseError("centre " + o.center + " is not in the upper half-plane");
    emit_domain(dirichlet_domain(fuchsian(cfg), cx, cy, cfg.depth), cfg);
  } else if (cmd == "df-check") {
    const auto dom = ford_domain(fuchsian(cfg), cfg.depth);
    const auto rep = df_check(dom);
    if (cfg.format == "svg") {
      emit_domain(dom, cfg, rep.has_axis ? std::optional(rep.axis) : std::nullopt);
    } else {
      emit(mirror_json(rep, cfg.bits));
    }
  } else if (cmd == "double-dirichlet") {
    const auto rep = double_dirichlet_check(fuchsian(cfg), interior_point(o.z1), interior_point(o.z2), cfg.depth);
    emit(mirror_json(rep, cfg.bits));
  } else if (cmd == "extract-reflection") {
    const auto dom = ford_domain(fuchsian(cfg), cfg.depth);
    emit(polygon_json(extract_reflection_group(dom, df_check(dom)), cfg.bits));
  } else if (cmd == "double") {
    if (!o.signature.empty()) {
      const auto dbl = double_reflection_group(polygon_from_signature(parse_signature(o.signature)), cfg.depth);
      if (cfg.format == "svg") return emit_domain(dbl.domain, cfg), ok;
      Json j;
      j["signature"] = to_string(signature(dbl.domain));
      j["domain"] = domain_json(dbl.domain, cfg.bits);
      emit(j);
    } else {
      if (cfg.input.empty()) throw ParseError("double needs --input or --signature");
      const auto dom = ford_domain(fuchsian(cfg), cfg.depth);
      const auto dbl = double_reflection_group(extract_reflection_group(dom, df_check(dom)), cfg.depth);
      if (cfg.format == "svg") return emit_domain(dbl.domain, cfg), ok;
      Json j;
      j["signature"] = to_string(signature(dbl.domain));
      j["generators"] = Json::array();
      for (const auto& g : dbl.generators) j["generators"].push_back(matrix_json(g));
      j["domain"] = domain_json(dbl.domain, cfg.bits);
      emit(j);
    }
  } else if (cmd == "polygon-from-signature") {
    emit(polygon_json(polygon_from_signature(parse_signature(o.signature)), cfg.bits));
  } else if (cmd == "congruence") {
    std::optional<FundamentalDomain<QuadRat>> dom;
    const MembershipOracle member = make_oracle(o, dom);
    const CosetAction act = coset_enumerate(member);
    emit(congruence_json(act, hsu_test(act), o.emit_perms));
  } else if (cmd == "kleinian-df") {
    GroupFile g = read_group(cfg.input);
    if (g.kind != "kleinian") throw ParseError(cfg.input + ": expected a kleinian group");
    emit(kleinian_json(df_criterion(g.kleinian)));
  } else if (cmd == "reproduce-paper") {
    const auto results = acceptance_results(o.data_dir);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (cfg.format == "json") {
      Json j = Json::array();
      for (const auto& r : results) j.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
      emit(j);
    } else {
      std::cout << format_results(results);
    }
    return all ? ok : failed;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fundamental domains of Fuchsian and Kleinian groups"};
  app.require_subcommand(1);
  Options o;

  auto* ford = app.add_subcommand("ford", "Ford domain");
  add_common(ford, o.cfg, true);
  auto* dir = app.add_subcommand("dirichlet", "Dirichlet domain");
  add_common(dir, o.cfg, true);
  dir->add_option("--center", o.center, "x,y with y > 0")->required();
  auto* dfc = app.add_subcommand("df-check", "mirror symmetry of the Ford domain");
  add_common(dfc, o.cfg, true);
  auto* dd = app.add_subcommand("double-dirichlet", "Dirichlet domains at two centres");
  add_common(dd, o.cfg, true);
  dd->add_option("--z1", o.z1, "x,y")->required();
  dd->add_option("--z2", o.z2, "x,y")->required();
  auto* ext = app.add_subcommand("extract-reflection", "reflection polygon of a symmetric Ford domain");
  add_common(ext, o.cfg, true);
  auto* dbl = app.add_subcommand("double", "rotation subgroup of a reflection polygon");
  add_common(dbl, o.cfg, false);
  dbl->add_option("--signature", o.signature, "(0; n1, ..., nt; m)");
  auto* poly = app.add_subcommand("polygon-from-signature", "reflection polygon for a signature");
  add_common(poly, o.cfg, false);
  poly->add_option("--signature", o.signature, "(0; n1, ..., nt; m)")->required();
  auto* cong = app.add_subcommand("congruence", "coset action, level and Hsu test");
  add_common(cong, o.cfg, false);
  cong->add_option("--oracle", o.oracle, "integral-intersection, principal:N or gamma0:N");
  cong->add_flag("--emit-perms", o.emit_perms, "include perm_L and perm_R");
  auto* kl = app.add_subcommand("kleinian-df", "DF criterion in upper half-space");
  add_common(kl, o.cfg, true);
  auto* rep = app.add_subcommand("reproduce-paper", "pass/fail table of the acceptance facts");
  add_common(rep, o.cfg, false);
  rep->add_option("--data-dir", o.data_dir, "directory holding the bundled group files");
  rep->callback([&] {
    if (rep->count("--format") == 0) o.cfg.format = "text";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const Unverified& e) {
    std::cerr << "dfdom: " << e.what() << "; try a larger --depth (now " << o.cfg.depth << ")\n";
    return unverified;
  } catch (const Inconsistent& e) {
    std::cerr << "dfdom: internal inconsistency: " << e.what() << '\n';
    return inconsistent;
  } catch (const ParseError& e) {
    std::cerr << "dfdom: " << e.what() << '\n';
    return input_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dfdom: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "dfdom: " << e.what() << '\n';
    return failed;
  }
}
