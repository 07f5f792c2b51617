#pragma once

#include <random>
#include <vector>

#include "quasitomo/cyclotomic.hpp"

namespace quasitomo::testing {

/// Element of order n from integer power-basis coefficients.
inline Cyclotomic cz(int n, std::vector<long> c) {
  std::vector<Rational> q;
  for (long v : c) q.emplace_back(v);
  q.resize(cyclotomic_field(n).degree(), 0);
  return Cyclotomic(n, std::move(q));
}

/// alpha + beta * zeta with alpha, beta rational (k_n = Q cases and convenience).
inline Cyclotomic ab(int n, const Rational& a, const Rational& b) {
  return Cyclotomic(n, a) + Cyclotomic::zeta(n) * b;
}

/// sqrt(2) in order 8, sqrt(3) in order 12: zeta + conj(zeta).
inline Cyclotomic cgen(int n) { return Cyclotomic::zeta(n, 1) + Cyclotomic::zeta(n, -1); }

inline Cyclotomic random_cyclotomic(std::mt19937& rng, int n, int bound, int max_den = 1) {
  std::uniform_int_distribution<int> coef(-bound, bound), den(1, max_den);
  std::vector<Rational> c(cyclotomic_field(n).degree());
  for (auto& v : c) {
    v = Rational(coef(rng), den(rng));
    v.canonicalize();
  }
  return Cyclotomic(n, std::move(c));
}

inline RealCyclotomic random_real(std::mt19937& rng, int n, int bound) {
  std::uniform_int_distribution<int> coef(-bound, bound);
  std::vector<Rational> c(cyclotomic_field(n).real_degree());
  for (auto& v : c) v = coef(rng);
  return RealCyclotomic(n, std::move(c));
}

}  // namespace quasitomo::testing
