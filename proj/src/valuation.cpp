#include "quasitomo/valuation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <numeric>
#include <thread>

#include "quasitomo/errors.hpp"

namespace quasitomo {

bool QuadrupleIndex::in_d_prime() const {
  if (m < 4) return false;
  for (int v : k)
    if (v < 1 || v > m - 1) return false;
  return k[0] + k[1] == k[2] + k[3];
}

bool QuadrupleIndex::in_d() const {
  return in_d_prime() && k[2] < k[0] && k[0] <= k[1] && k[1] < k[3] && k[3] <= m - 1;
}

QuadrupleIndex QuadrupleIndex::scaled(int j) const {
  QuadrupleIndex out{m, k};
  for (auto& v : out.k) v = static_cast<int>(((static_cast<long>(v) * j) % m + m) % m);
  return out;
}

std::string to_string(const QuadrupleIndex& d) {
  return "m=" + std::to_string(d.m) + " d=(" + std::to_string(d.k[0]) + "," + std::to_string(d.k[1]) + "," +
         std::to_string(d.k[2]) + "," + std::to_string(d.k[3]) + ")";
}

long vp_rational(const Rational& q, long p) {
  if (q == 0) throw InfiniteValuation();
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  const Integer pp = p;
  auto count = [&](Integer z) {
    long v = 0;
    while (z % pp == 0) {
      z /= pp;
      ++v;
    }
    return v;
  };
  return count(abs(q.get_num())) - count(q.get_den());
}

Rational vp_one_minus_zeta(int m, long s, long p) {
  if (m < 1) throw InvalidArgument("order must be positive");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  const long r = ((s % m) + m) % m;
  if (r == 0) throw InfiniteValuation();
  const long order = m / std::gcd(static_cast<long>(m), r);
  long rest = order, t = 0;
  while (rest % p == 0) {
    rest /= p;
    ++t;
  }
  if (rest != 1) return 0;
  long pt1 = 1;
  for (long i = 1; i < t; ++i) pt1 *= p;
  return Rational(1, pt1 * (p - 1));
}

Rational vp_f_by_factors(const QuadrupleIndex& d, long p) {
  return vp_one_minus_zeta(d.m, d.k[0], p) + vp_one_minus_zeta(d.m, d.k[1], p) -
         vp_one_minus_zeta(d.m, d.k[2], p) - vp_one_minus_zeta(d.m, d.k[3], p);
}

namespace {

void require_d_prime(const QuadrupleIndex& d) {
  if (d.m < 4) throw InvalidArgument("f_m requires m >= 4");
  for (int i = 2; i < 4; ++i)
    if (d.k[i] % d.m == 0) throw DivisionByZero();
  if (!d.in_d_prime()) throw InvalidArgument(to_string(d) + " is not in D'_m");
}

Cyclotomic one_minus_zeta_product(int m, int a, int b) {
  const auto one = Cyclotomic(m, Rational(1));
  return (one - Cyclotomic::zeta(m, a)) * (one - Cyclotomic::zeta(m, b));
}

}  // namespace

Cyclotomic eval_f(const QuadrupleIndex& d) {
  require_d_prime(d);
  return one_minus_zeta_product(d.m, d.k[0], d.k[1]) / one_minus_zeta_product(d.m, d.k[2], d.k[3]);
}

std::optional<Rational> rational_f(const QuadrupleIndex& d) {
  require_d_prime(d);
  const auto num = one_minus_zeta_product(d.m, d.k[0], d.k[1]);
  const auto den = one_minus_zeta_product(d.m, d.k[2], d.k[3]);
  // both are integral, so compare numerator vectors directly
  const auto& a = num.numerators();
  const auto& b = den.numerators();
  std::size_t i = 0;
  while (b[i] == 0) ++i;
  Rational q(a[i], b[i]);
  q.canonicalize();
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] * q.get_den() != b[j] * q.get_num()) return std::nullopt;
  return q;
}

namespace {

std::vector<RationalSolution> solutions_for_order(int m) {
  std::vector<RationalSolution> out;
  for (int k3 = 1; k3 <= m - 1; ++k3)
    for (int k1 = k3 + 1; k1 <= m - 1; ++k1)
      for (int k2 = k1; k2 <= m - 1; ++k2) {
        const int k4 = k1 + k2 - k3;
        if (k4 > m - 1) break;
        QuadrupleIndex d{m, {k1, k2, k3, k4}};
        if (auto q = rational_f(d)) out.push_back({d, *q});
      }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.d < b.d; });
  return out;
}

}  // namespace

void enumerate_rational_f(int m_max, const std::function<void(const RationalSolution&)>& sink, unsigned threads) {
  if (m_max < 4) throw InvalidArgument("m_max must be at least 4");
  if (m_max > max_order()) throw InvalidArgument("m_max exceeds the configured order ceiling");
  const int count = m_max - 3;
  std::vector<std::vector<RationalSolution>> per_order(count);
  threads = std::max(1u, std::min<unsigned>(threads, count));
  if (threads == 1) {
    for (int m = 4; m <= m_max; ++m)
      for (const auto& s : solutions_for_order(m)) sink(s);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) per_order[i] = solutions_for_order(i + 4);
    });
  for (auto& th : pool) th.join();
  for (const auto& bucket : per_order)
    for (const auto& s : bucket) sink(s);
}

std::vector<RationalSolution> enumerate_rational_f(int m_max, unsigned threads) {
  std::vector<RationalSolution> out;
  enumerate_rational_f(m_max, [&](const RationalSolution& s) { out.push_back(s); }, threads);
  return out;
}

const std::set<Rational>& n1_set() {
  static const std::set<Rational> s{Rational(4, 3), Rational(3, 2), Rational(2), Rational(3), Rational(4)};
  return s;
}

std::set<Rational> a_down(long a) {
  std::set<Rational> out;
  for (long b = 1; b < a; ++b)
    if (std::gcd(a, b) == 1) out.insert(Rational(a, b));
  return out;
}

const std::set<Rational>& n2_set() {
  static const std::set<Rational> s = [] {
    std::set<Rational> out{Rational(-1), Rational(1)};
    for (const auto& q : n1_set()) out.insert(q * q);
    for (long a : {2, 3, 4, 5, 6, 8, 9, 12, 16})
      for (const auto& q : a_down(a)) {
        out.insert(q);
        out.insert(-q);
        out.insert(1 / q);
        out.insert(-1 / q);
      }
    return out;
  }();
  return s;
}

bool n1_member(const Rational& q) { return n1_set().contains(q); }
bool n2_member(const Rational& q) { return n2_set().contains(q); }

bool two_prime_criterion(const Rational& q) {
  if (q == 0) throw InvalidArgument("two-prime criterion is undefined at zero");
  Rational a = abs(q);
  if (a == 1) return true;
  if (a < 1) a = 1 / a;
  return distinct_prime_factors(a.get_num()).size() <= 2;
}

const std::vector<RationalSolution>& base_solutions() {
  static const std::vector<RationalSolution> s{
      {{12, {6, 6, 4, 8}}, Rational(4, 3)},  {{12, {6, 6, 2, 10}}, Rational(4)},
      {{12, {4, 8, 3, 9}}, Rational(3, 2)},  {{12, {4, 8, 2, 10}}, Rational(3)},
      {{12, {4, 4, 2, 6}}, Rational(3, 2)},  {{12, {8, 8, 6, 10}}, Rational(3, 2)},
      {{12, {4, 4, 1, 7}}, Rational(3)},     {{12, {8, 8, 5, 11}}, Rational(3)},
      {{12, {3, 9, 2, 10}}, Rational(2)},    {{12, {3, 3, 1, 5}}, Rational(2)},
      {{12, {9, 9, 7, 11}}, Rational(2)},
  };
  return s;
}

int base_solution_index(const QuadrupleIndex& d) {
  const auto& base = base_solutions();
  for (std::size_t i = 0; i < base.size(); ++i) {
    bool match = true;
    for (int j = 0; j < 4; ++j)
      if (12L * d.k[j] != static_cast<long>(d.m) * base[i].d.k[j]) match = false;
    if (match) return static_cast<int>(i) + 1;
  }
  return 0;
}

bool in_q2_family(const QuadrupleIndex& d) {
  if (d.m % 2 != 0) return false;
  const int s = d.m / 2;
  if (s < 2) return false;
  const auto [k1, k2, k3, k4] = d.k;
  const int k = k3;
  if (k4 != k + s) return false;
  if (k1 == 2 * k && k2 == s && 1 <= k && 2 * k <= s) return true;
  if (k1 == s && k2 == 2 * k && s <= 2 * k && k < s) return true;
  return false;
}

std::string to_string(CrossRatioOutcome v) {
  switch (v) {
    case CrossRatioOutcome::DeterminedByN1: return "DeterminedByN1";
    case CrossRatioOutcome::DeterminedByN2: return "DeterminedByN2";
    case CrossRatioOutcome::DeterminedByTwoPrime: return "DeterminedByTwoPrime";
    case CrossRatioOutcome::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CrossRatioVerdict classify_cross_ratio(const RealCyclotomic& x) {
  const int n = x.order();
  CrossRatioVerdict v;
  v.value = x;
  v.norm = field_norm_real(x);
  if (v.norm == 0) throw InvalidArgument("cross ratio is zero");
  const bool periodic = n == 3 || n == 4 || n == 6;
  if (periodic && !x.is_rational())
    throw InternalError("cross ratio " + x.to_string() + " is not rational in order " + std::to_string(n));
  v.n1_member = x.is_rational() && n1_member(x.to_rational());
  v.n2_member = n2_member(v.norm);
  v.two_prime_ok = two_prime_criterion(v.norm);
  const bool codim_two = n == 5 || n == 8 || n == 10 || n == 12;
  if ((periodic || x.is_rational()) && !v.n1_member)
    v.verdict = CrossRatioOutcome::DeterminedByN1;
  else if (codim_two && !v.n2_member)
    v.verdict = CrossRatioOutcome::DeterminedByN2;
  else if (!v.two_prime_ok)
    v.verdict = CrossRatioOutcome::DeterminedByTwoPrime;
  else
    v.verdict = CrossRatioOutcome::Inconclusive;
  return v;
}

}  // namespace quasitomo
