#pragma once

#include "dfdom/halfplane.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dfd {

/// Word in the input generators: letter +k is generator k-1, -k its inverse.
using Word = std::vector<int>;
std::string to_string(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& u, const Word& v);

template <class F>
struct Element {
  Moebius<F> map;
  Word word;
};

template <class F>
Moebius<F> evaluate(const Word& w, const std::vector<Moebius<F>>& gens);

/// Breadth-first enumeration of distinct elements of word length <= depth
/// (identity excluded), in a deterministic order.
template <class F>
std::vector<Element<F>> enumerate_words(const std::vector<Moebius<F>>& gens, int depth);

class Unverified : public std::runtime_error {
 public:
  Unverified(int depth, const std::string& why)
      : std::runtime_error("unverified(" + std::to_string(depth) + "): " + why), depth_(depth) {}
  int depth() const { return depth_; }

 private:
  int depth_;
};

class NoParabolicAtInfinity : public std::invalid_argument {
 public:
  NoParabolicAtInfinity() : std::invalid_argument("no parabolic at infinity") {}
};

class CenterIsFixedPoint : public std::invalid_argument {
 public:
  CenterIsFixedPoint() : std::invalid_argument("center is a fixed point") {}
};

/// Raised when two independent computations of the same quantity disagree.
class Inconsistent : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ReductionBudget : public std::runtime_error {
 public:
  ReductionBudget() : std::runtime_error("reduction budget exceeded") {}
};

enum class SideOrigin { strip, circle, bisector };

template <class F>
struct Side {
  HalfPlane<F> half;  // the domain lies where this form is >= 0
  Geodesic<F> geodesic;
  Point<F> start, end;  // counter-clockwise along the boundary
  SideOrigin origin = SideOrigin::circle;
  Moebius<F> pairing;  // maps this side onto side `partner`, reversing it
  Word word;
  int partner = -1;
};

template <class F>
struct Vertex {
  Point<F> point;
  Real angle = 0;  // interior angle, 0 at ideal vertices
};

template <class F>
struct VertexCycle {
  std::vector<int> members;  // vertex indices in walk order
  Real angle_sum = 0;
  bool ideal = false;
  long order = 1;  // cone order s; meaningless for ideal cycles
  Moebius<F> transform;
  /// Ford domains: all members at one height (exact for QuadRat)
  bool equal_heights = true;
};

struct Signature {
  long genus = 0;
  std::vector<long> cone_orders;  // sorted ascending
  long cusps = 0;

  Real area() const;
  friend bool operator==(const Signature&, const Signature&) = default;
};
std::string to_string(const Signature& s);

enum class DomainKind { ford, dirichlet };

template <class F>
struct FundamentalDomain {
  DomainKind kind = DomainKind::ford;
  int depth = 0;
  std::vector<Moebius<F>> generators;
  // Ford: strip x0 <= x <= x0 + width, translation = (1, width; 0, 1)
  F x0{};
  F width{};
  Word translation_word;
  // Dirichlet: centre (cx, cy) with cy the actual height
  F cx{};
  F cy{};

  std::vector<Side<F>> sides;
  std::vector<Vertex<F>> vertices;  // vertex i is the start of side i
  std::vector<VertexCycle<F>> cycles;

  Moebius<F> translation() const { return Moebius<F>::translation(width); }
  Point<F> center() const { return Point<F>::interior(cx, cy); }
  /// Strictly inside every side half-plane.
  bool contains_interior(const Point<F>& p) const;
  bool contains(const Point<F>& p) const;
};

template <class F>
struct FordOptions {
  int depth = 4;
  std::optional<F> x0;  // left edge of the strip; default -width/2
};

template <class F>
FundamentalDomain<F> ford_domain(const std::vector<Moebius<F>>& gens, const FordOptions<F>& opts);

template <class F>
FundamentalDomain<F> ford_domain(const std::vector<Moebius<F>>& gens, int depth) {
  FordOptions<F> o;
  o.depth = depth;
  return ford_domain(gens, o);
}

/// Dirichlet domain centred at cx + i*cy (cy > 0 given as the height itself).
template <class F>
FundamentalDomain<F> dirichlet_domain(const std::vector<Moebius<F>>& gens, const F& cx, const F& cy, int depth);

template <class F>
const std::vector<VertexCycle<F>>& vertex_cycles(const FundamentalDomain<F>& dom) {
  return dom.cycles;
}

template <class F>
Real area(const FundamentalDomain<F>& dom);

/// Signature from the cycle structure; throws Inconsistent when its orbifold
/// area disagrees with the Gauss-Bonnet area.
template <class F>
Signature signature(const FundamentalDomain<F>& dom);

template <class F>
std::vector<std::vector<Point<F>>> cusp_classes(const FundamentalDomain<F>& dom);

/// Equal side sets (geodesics and endpoints) and identical pairing matrices.
template <class F>
bool same_domain(const FundamentalDomain<F>& p, const FundamentalDomain<F>& q);

template <class F>
struct Reduction {
  /// (side index, power) in order of application; the side index -1 marks a
  /// power of the strip translation.
  std::vector<std::pair<int, long>> word;
  Moebius<F> residual;
  bool identity() const { return residual.is_identity(); }
};

template <class F>
Point<F> default_base_point(const FundamentalDomain<F>& dom);

template <class F>
Reduction<F> reduce(const Moebius<F>& g, const FundamentalDomain<F>& dom, const Point<F>& base,
                    long budget = 10000);

template <class F>
Reduction<F> reduce(const Moebius<F>& g, const FundamentalDomain<F>& dom) {
  return reduce(g, dom, default_base_point(dom));
}

}  // namespace dfd
