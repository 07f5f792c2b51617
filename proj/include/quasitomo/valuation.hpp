#pragma once

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quasitomo/cyclotomic.hpp"

namespace quasitomo {

/// Index (k1,k2,k3,k4) of the ratio
///   f_m(d) = (1 - z^k1)(1 - z^k2) / ((1 - z^k3)(1 - z^k4)),  z = zeta_m.
struct QuadrupleIndex {
  int m = 0;
  std::array<int, 4> k{};

  /// k1 + k2 == k3 + k4, every k in [1, m-1].
  bool in_d_prime() const;
  /// Additionally k3 < k1 <= k2 < k4 <= m-1.
  bool in_d() const;
  /// The index with numerator and denominator exchanged.
  QuadrupleIndex swapped() const { return {m, {k[2], k[3], k[0], k[1]}}; }
  /// All k multiplied by j (mod m).
  QuadrupleIndex scaled(int j) const;

  friend bool operator==(const QuadrupleIndex&, const QuadrupleIndex&) = default;
  friend auto operator<=>(const QuadrupleIndex&, const QuadrupleIndex&) = default;
};

std::string to_string(const QuadrupleIndex& d);

/// Exponent of p in q. Throws InfiniteValuation for q == 0 and
/// InvalidArgument if p is not prime.
long vp_rational(const Rational& q, long p);

/// p-adic valuation of 1 - zeta_m^s, normalised so that v_p(p) = 1.
Rational vp_one_minus_zeta(int m, long s, long p);

/// v_p(f_m(d)) obtained by adding the valuations of the four factors.
Rational vp_f_by_factors(const QuadrupleIndex& d, long p);

/// Exact value of f_m(d) in Q(zeta_m); d must lie in D'_m.
Cyclotomic eval_f(const QuadrupleIndex& d);

/// Exact test whether f_m(d) is rational, returning the value if so. Avoids
/// the field inversion by checking proportionality of numerator and
/// denominator.
std::optional<Rational> rational_f(const QuadrupleIndex& d);

struct RationalSolution {
  QuadrupleIndex d;
  Rational q;
};

/// Every d in D_m, 4 <= m <= m_max, with rational f_m(d), in lexicographic
/// order of (m, d). Orders are partitioned over `threads` workers.
std::vector<RationalSolution> enumerate_rational_f(int m_max, unsigned threads = 1);

/// Streaming form; the callback sees solutions in the same order.
void enumerate_rational_f(int m_max, const std::function<void(const RationalSolution&)>& sink,
                          unsigned threads = 1);

/// {4/3, 3/2, 2, 3, 4}.
const std::set<Rational>& n1_set();
/// {-1, 1} u N1^2 u N u N^-1 with N the union of +-a_down over
/// a in {2,3,4,5,6,8,9,12,16}, a_down = {a/b : 1 <= b < a, gcd(a, b) = 1}.
const std::set<Rational>& n2_set();
/// a_down for a single a.
std::set<Rational> a_down(long a);

bool n1_member(const Rational& q);
bool n2_member(const Rational& q);

/// True iff q lies in +-({1} u [Q_{>1} with at most two distinct primes in
/// the numerator]^{+-1}). Throws InvalidArgument for q == 0.
bool two_prime_criterion(const Rational& q);

/// Which base solution (i)..(xi) (1-based) d is a rational multiple of, or
/// zero when none.
int base_solution_index(const QuadrupleIndex& d);
/// Membership in the families d = (2k,s,k,k+s), 1 <= k <= s/2, or
/// d = (s,2k,k,k+s), s/2 <= k < s, with m = 2s.
bool in_q2_family(const QuadrupleIndex& d);
/// The eleven base solutions at m = 12 with their values.
const std::vector<RationalSolution>& base_solutions();

enum class CrossRatioOutcome { DeterminedByN1, DeterminedByN2, DeterminedByTwoPrime, Inconclusive };

std::string to_string(CrossRatioOutcome v);

struct CrossRatioVerdict {
  RealCyclotomic value;
  Rational norm;
  bool n1_member = false;
  bool n2_member = false;
  bool two_prime_ok = false;
  CrossRatioOutcome verdict = CrossRatioOutcome::Inconclusive;
};

/// Applies the N1 test (rational cross ratios, which is every cross ratio in
/// orders 3, 4, 6), the N2 test on the norm (orders 5, 8, 10, 12) and the
/// two-prime test on the norm (all orders).
CrossRatioVerdict classify_cross_ratio(const RealCyclotomic& x);

}  // namespace quasitomo
