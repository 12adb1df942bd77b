#pragma once

#include "dfdom/domains.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dfd {

using Mat = Moebius<QuadRat>;

inline Mat L_matrix() { return Mat(1, 1, 0, 1); }
inline Mat R_matrix() { return Mat(1, 0, 1, 1); }

/// Alternating powers of L = (1,1;0,1) and R = (1,0;1,1).
struct LRWord {
  std::vector<std::pair<char, long>> letters;
  Mat evaluate() const;
};
std::string to_string(const LRWord& w);

/// Throws std::invalid_argument unless g has integer entries.
LRWord lr_decompose(const Mat& g);

bool is_integral(const Mat& g);

/// Permutation of {0, ..., n-1}; p[i] is the image of i.
using Perm = std::vector<int>;

Perm compose(const Perm& first, const Perm& then);  // i -> then[first[i]]
Perm perm_inverse(const Perm& p);
Perm perm_pow(const Perm& p, long k);
long perm_order(const Perm& p);
bool is_identity(const Perm& p);
/// Sorted cycle lengths, fixed points included.
std::vector<long> cycle_type(const Perm& p);
/// Cycle notation on 1-based points, fixed points omitted.
std::string cycles_string(const Perm& p);
/// Parses "(1 2 3)(4 5)" on n points.
Perm parse_cycles(const std::string& s, int n);

using MembershipOracle = std::function<bool(const Mat&)>;

/// Action of PSL2(Z) by right multiplication on the right cosets H g.
struct CosetAction {
  int index = 0;
  Perm perm_L, perm_R;
  std::vector<Mat> reps;  // reps[0] is the identity
};

class IndexBudget : public std::runtime_error {
 public:
  IndexBudget() : std::runtime_error("index exceeds budget") {}
};

CosetAction coset_enumerate(const MembershipOracle& member, int budget = 1000);

/// lcm of the cusp widths, i.e. of the cycle lengths of perm_L.
long level(const CosetAction& action);

enum class Verdict { congruence, non_congruence, untested };
std::string to_string(Verdict v);

struct CongruenceReport {
  long level = 1;
  Verdict verdict = Verdict::untested;
  std::string reason;
  long half = 0;           // inverse of 2 mod level
  long witness_order = 0;  // order of R^2 L^-half
  std::string witness;
};

/// Hsu's relation for odd level; even level is reported untested.
CongruenceReport hsu_test(const CosetAction& action);

/// Order of the permutation group generated by perms (Schreier-Sims).
Integer perm_group_order(const std::vector<Perm>& perms);

Integer principal_congruence_index(long n);

/// A relabeling phi with phi a_k phi^-1 = b_k for all k, for transitive groups.
std::optional<Perm> simultaneous_conjugacy(const std::vector<Perm>& a, const std::vector<Perm>& b);

/// Membership in Gamma(n) and Gamma_0(n), read off the entries.
MembershipOracle principal_congruence_oracle(long n);
MembershipOracle gamma0_oracle(long n);
/// g in PSL2(Z) and in the group whose verified domain is given.
MembershipOracle intersection_oracle(const FundamentalDomain<QuadRat>& dom);

/// phi T^k phi^-1 for the conjugators listed for the cusps 0, 1/3 and 3/11.
struct CuspParabolic {
  Mat conjugator;
  long power;
  Mat product;
  QuadRat cusp;
};
std::vector<CuspParabolic> cusp_parabolics();

}  // namespace dfd
