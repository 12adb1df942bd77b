#include "dfdom/modular.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dfd {

namespace {

Integer entry(const QuadRat& x) {
  if (!x.is_integer()) throw std::invalid_argument("matrix entry " + to_string(x) + " is not an integer");
  return x.a().get_num();
}

long mod(const Integer& x, long n) {
  Integer r = x % n;
  if (r < 0) r += n;
  return r.get_si();
}

// truncated quotient, so |x - q y| < |y|
Integer quot(const Integer& x, const Integer& y) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return q;
}

Mat power(char letter, long k) {
  return letter == 'L' ? Mat(1, k, 0, 1) : Mat(1, 0, k, 1);
}

void push(LRWord& w, char letter, long k) {
  if (k == 0) return;
  if (!w.letters.empty() && w.letters.back().first == letter) {
    w.letters.back().second += k;
    if (w.letters.back().second == 0) w.letters.pop_back();
    return;
  }
  w.letters.emplace_back(letter, k);
}

}  // namespace

Mat LRWord::evaluate() const {
  Mat g;
  for (const auto& [letter, k] : letters) g = g * power(letter, k);
  return g;
}

std::string to_string(const LRWord& w) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (const auto& [letter, k] : w.letters) {
    if (!out.empty()) out += ' ';
    out += letter;
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

bool is_integral(const Mat& g) {
  return g.a().is_integer() && g.b().is_integer() && g.c().is_integer() && g.d().is_integer();
}

LRWord lr_decompose(const Mat& g) {
  Integer a = entry(g.a()), b = entry(g.b()), c = entry(g.c()), d = entry(g.d());
  // g = W h; peel L^k or R^k off the left until a column entry vanishes, clearing c on ties
  LRWord w;
  while (a != 0 && c != 0) {
    if (abs(a) > abs(c)) {
      const Integer k = quot(a, c);
      a -= k * c;
      b -= k * d;
      push(w, 'L', k.get_si());
    } else {
      const Integer k = quot(c, a);
      c -= k * a;
      d -= k * b;
      push(w, 'R', k.get_si());
    }
  }
  if (c == 0) {
    // +-(1, n; 0, 1)
    push(w, 'L', Integer(a * b).get_si());
  } else {
    // +-(0, -1; 1, m) = S L^m with S = L R^-1 L
    const Integer m = c * d;
    push(w, 'L', 1);
    push(w, 'R', -1);
    push(w, 'L', 1 + m.get_si());
  }
  if (!(w.evaluate() == g)) throw std::logic_error("LR decomposition does not reproduce the matrix");
  return w;
}

Perm compose(const Perm& first, const Perm& then) {
  Perm out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = then[static_cast<std::size_t>(first[i])];
  return out;
}

Perm perm_inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

Perm perm_pow(const Perm& p, long k) {
  Perm base = k < 0 ? perm_inverse(p) : p;
  long e = k < 0 ? -k : k;
  Perm out(p.size());
  std::iota(out.begin(), out.end(), 0);
  while (e > 0) {
    if (e & 1) out = compose(out, base);
    base = compose(base, base);
    e >>= 1;
  }
  return out;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::vector<long> cycle_type(const Perm& p) {
  std::vector<long> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long perm_order(const Perm& p) {
  long o = 1;
  for (long len : cycle_type(p)) o = std::lcm(o, len);
  return o;
}

std::string cycles_string(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      if (j != i) out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm parse_cycles(const std::string& s, int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::size_t pos = 0;
  while ((pos = s.find('(', pos)) != std::string::npos) {
    const std::size_t end = s.find(')', pos);
    if (end == std::string::npos) throw std::invalid_argument("unbalanced cycle notation");
    std::istringstream in(s.substr(pos + 1, end - pos - 1));
    std::vector<int> cyc;
    for (int x; in >> x;) {
      if (x < 1 || x > n) throw std::invalid_argument("point " + std::to_string(x) + " out of range");
      cyc.push_back(x - 1);
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) p[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
    pos = end + 1;
  }
  return p;
}

CosetAction coset_enumerate(const MembershipOracle& member, int budget) {
  if (!member(Mat())) throw std::invalid_argument("membership oracle rejects the identity");
  CosetAction act;
  act.reps.push_back(Mat());
  std::vector<Mat> rep_inv{Mat()};
  std::vector<int> to_L, to_R;
  const Mat gens[2] = {L_matrix(), R_matrix()};
  // H x = H rep_j  iff  x rep_j^-1 in H
  auto locate = [&](const Mat& x) -> int {
    for (std::size_t j = 0; j < act.reps.size(); ++j) {
      if (member(x * rep_inv[j])) return static_cast<int>(j);
    }
    return -1;
  };
  for (std::size_t i = 0; i < act.reps.size(); ++i) {
    for (int g = 0; g < 2; ++g) {
      const Mat x = act.reps[i] * gens[g];
      int j = locate(x);
      if (j < 0) {
        if (static_cast<int>(act.reps.size()) >= budget) throw IndexBudget();
        j = static_cast<int>(act.reps.size());
        act.reps.push_back(x);
        rep_inv.push_back(x.inverse());
      }
      (g == 0 ? to_L : to_R).push_back(j);
    }
  }
  act.index = static_cast<int>(act.reps.size());
  act.perm_L = to_L;
  act.perm_R = to_R;
  // a permutation needs every coset hit once; the oracle decides that, so check it
  for (const Perm* p : {&act.perm_L, &act.perm_R}) {
    std::vector<int> hits(act.reps.size(), 0);
    for (int j : *p) ++hits[static_cast<std::size_t>(j)];
    if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) {
      throw Inconsistent("coset action is not a permutation; the oracle is not a subgroup");
    }
  }
  return act;
}

long level(const CosetAction& action) { return perm_order(action.perm_L); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::congruence:
      return "congruence";
    case Verdict::non_congruence:
      return "non-congruence";
    case Verdict::untested:
      return "untested";
  }
  return "untested";
}

CongruenceReport hsu_test(const CosetAction& action) {
  CongruenceReport rep;
  rep.level = level(action);
  const long n = rep.level;
  if (n == 1) {
    rep.verdict = Verdict::congruence;
    rep.reason = "level 1: the subgroup is the whole modular group";
    return rep;
  }
  if (n % 2 == 0) {
    rep.verdict = Verdict::untested;
    rep.reason = "even level";
    return rep;
  }
  rep.half = (n + 1) / 2;
  const Perm w = compose(perm_pow(action.perm_R, 2), perm_pow(action.perm_L, -rep.half));
  rep.witness = "R^2 L^-" + std::to_string(rep.half);
  rep.witness_order = perm_order(w);
  const bool ok = is_identity(perm_pow(w, 3));
  rep.verdict = ok ? Verdict::congruence : Verdict::non_congruence;
  rep.reason = rep.witness + (ok ? " cubes to the identity" : " has order " + std::to_string(rep.witness_order));
  return rep;
}

namespace {

// Schreier-Sims with explicit transversals; fine for the small degrees used here
struct Level {
  int base;
  std::vector<Perm> gens;
  std::vector<int> orbit;
  std::vector<std::optional<Perm>> transversal;  // u with base -> point
};

void rebuild_orbit(Level& lv, std::size_t n) {
  lv.transversal.assign(n, std::nullopt);
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  lv.transversal[static_cast<std::size_t>(lv.base)] = id;
  lv.orbit = {lv.base};
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    const int x = lv.orbit[k];
    for (const Perm& g : lv.gens) {
      const int y = g[static_cast<std::size_t>(x)];
      if (!lv.transversal[static_cast<std::size_t>(y)]) {
        lv.transversal[static_cast<std::size_t>(y)] = compose(*lv.transversal[static_cast<std::size_t>(x)], g);
        lv.orbit.push_back(y);
      }
    }
  }
}

// strip g through levels from `from`; returns the residue and the level where it stopped
std::pair<Perm, std::size_t> sift(const std::vector<Level>& chain, Perm g, std::size_t from) {
  for (std::size_t i = from; i < chain.size(); ++i) {
    const int y = g[static_cast<std::size_t>(chain[i].base)];
    const auto& u = chain[i].transversal[static_cast<std::size_t>(y)];
    if (!u) return {g, i};
    g = compose(g, perm_inverse(*u));
  }
  return {g, chain.size()};
}

int moved_point(const Perm& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] != static_cast<int>(i)) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

Integer perm_group_order(const std::vector<Perm>& perms) {
  std::vector<Perm> gens;
  for (const Perm& p : perms) {
    if (p.size() != perms.front().size()) throw std::invalid_argument("permutations act on different sets");
    if (!is_identity(p)) gens.push_back(p);
  }
  if (gens.empty()) return 1;
  const std::size_t n = gens.front().size();
  std::vector<Level> chain{Level{moved_point(gens.front()), gens, {}, {}}};
  rebuild_orbit(chain[0], n);

  // level i is complete once every Schreier generator sifts through the levels below it
  std::size_t i = 0;
  for (;;) {
    bool added = false;
    for (std::size_t k = 0; k < chain[i].orbit.size() && !added; ++k) {
      const int x = chain[i].orbit[k];
      const Perm& ux = *chain[i].transversal[static_cast<std::size_t>(x)];
      for (std::size_t gi = 0; gi < chain[i].gens.size() && !added; ++gi) {
        const Perm& g = chain[i].gens[gi];
        const int y = g[static_cast<std::size_t>(x)];
        const Perm s = compose(compose(ux, g), perm_inverse(*chain[i].transversal[static_cast<std::size_t>(y)]));
        auto [h, at] = sift(chain, s, i + 1);
        if (is_identity(h)) continue;
        if (at == chain.size()) chain.push_back(Level{moved_point(h), {}, {}, {}});
        for (std::size_t j = i + 1; j <= at; ++j) {
          chain[j].gens.push_back(h);
          rebuild_orbit(chain[j], n);
        }
        i = at;
        added = true;
      }
    }
    if (added) continue;
    if (i == 0) break;
    --i;
  }
  Integer order = 1;
  for (const auto& lv : chain) order *= static_cast<unsigned long>(lv.orbit.size());
  return order;
}

Integer principal_congruence_index(long n) {
  if (n < 2) throw std::invalid_argument("level must be at least 2");
  if (n == 2) return 6;
  // n^3/2 prod (1 - 1/p^2) = (n^3/2) prod (p^2 - 1)/p^2
  Integer num = Integer(n) * n * n, den = 2;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    num *= p * p - 1;
    den *= p * p;
    while (m % p == 0) m /= p;
  }
  if (m > 1) {
    num *= m * m - 1;
    den *= m * m;
  }
  return num / den;
}

std::optional<Perm> simultaneous_conjugacy(const std::vector<Perm>& a, const std::vector<Perm>& b) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  const std::size_t n = a.front().size();
  for (std::size_t start = 0; start < n; ++start) {
    Perm phi(n, -1);
    std::vector<bool> used(n, false);
    phi[0] = static_cast<int>(start);
    used[start] = true;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t k = 0; k < queue.size() && ok; ++k) {
      const int x = queue[k];
      for (std::size_t g = 0; g < a.size() && ok; ++g) {
        const int y = a[g][static_cast<std::size_t>(x)];
        const int img = b[g][static_cast<std::size_t>(phi[static_cast<std::size_t>(x)])];
        if (phi[static_cast<std::size_t>(y)] < 0) {
          if (used[static_cast<std::size_t>(img)]) {
            ok = false;
            break;
          }
          phi[static_cast<std::size_t>(y)] = img;
          used[static_cast<std::size_t>(img)] = true;
          queue.push_back(y);
        } else if (phi[static_cast<std::size_t>(y)] != img) {
          ok = false;
        }
      }
    }
    if (ok && queue.size() == n) return phi;
  }
  return std::nullopt;
}

MembershipOracle principal_congruence_oracle(long n) {
  return [n](const Mat& g) {
    if (!is_integral(g)) return false;
    const long a = mod(entry(g.a()), n), b = mod(entry(g.b()), n), c = mod(entry(g.c()), n),
               d = mod(entry(g.d()), n);
    if (b != 0 || c != 0) return false;
    return (a == 1 && d == 1) || (a == (n - 1) % n && d == (n - 1) % n);
  };
}

MembershipOracle gamma0_oracle(long n) {
  return [n](const Mat& g) { return is_integral(g) && mod(entry(g.c()), n) == 0; };
}

MembershipOracle intersection_oracle(const FundamentalDomain<QuadRat>& dom) {
  const Point<QuadRat> base = default_base_point(dom);
  return [&dom, base](const Mat& g) { return is_integral(g) && reduce(g, dom, base).identity(); };
}

std::vector<CuspParabolic> cusp_parabolics() {
  auto make = [](Mat phi, long k, QuadRat cusp) {
    return CuspParabolic{phi, k, phi * Mat::translation(k) * phi.inverse(), std::move(cusp)};
  };
  return {make(Mat(0, -1, 1, 0), 11, 0), make(Mat(1, 0, 3, 1), 11, QuadRat(Rational(1, 3))),
          make(Mat(3, 1, 11, 4), 1, QuadRat(Rational(3, 11)))};
}

}  // namespace dfd
