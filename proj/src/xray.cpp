#include "quasitomo/xray.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "quasitomo/errors.hpp"

namespace quasitomo {

bool are_parallel(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order() != b.order()) throw OrderMismatch(a.order(), b.order());
  const Cyclotomic w = a.conj() * b;
  return w == w.conj();
}

Direction::Direction(const Cyclotomic& o) {
  if (o.is_zero()) throw InvalidArgument("direction representative must be nonzero");
  const auto& num = o.numerators();
  Integer g = 0;
  for (const auto& c : num) g = gcd(g, c);
  std::vector<Integer> reduced;
  for (const auto& c : num) reduced.push_back(c / g);
  rep_ = Cyclotomic(o.order(), std::move(reduced), 1);
  const bool real = rep_ == rep_.conj();
  const auto v = rep_.value();
  if (real ? v.real() < 0 : v.imag() < 0) rep_ = -rep_;
}

Direction::Direction(int n, std::vector<long> coeffs) {
  std::vector<Integer> c(coeffs.begin(), coeffs.end());
  c.resize(cyclotomic_field(n).degree(), 0);
  *this = Direction(Cyclotomic(n, std::move(c), 1));
}

double Direction::angle() const {
  const double a = std::arg(rep_.value());
  return a < 0 ? a + std::numbers::pi : a;
}

void require_pairwise_nonparallel(const std::vector<Direction>& U) {
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i + 1; j < U.size(); ++j) {
      if (U[i].order() != U[j].order()) throw OrderMismatch(U[i].order(), U[j].order());
      if (U[i].parallel_to(U[j]))
        throw ParallelDirections("directions " + U[i].rep().to_string() + " and " + U[j].rep().to_string() +
                                 " are parallel");
    }
}

std::vector<Direction> sort_by_angle(std::vector<Direction> U) {
  require_pairwise_nonparallel(U);
  std::sort(U.begin(), U.end(), [](const Direction& a, const Direction& b) { return a.angle() < b.angle(); });
  return U;
}

Cyclotomic line_key(const Cyclotomic& z, const Direction& u) {
  const Cyclotomic w = z * u.rep().conj();
  return w - w.conj();
}

long XRaySnapshot::total() const {
  long s = 0;
  for (const auto& [k, c] : buckets) s += c;
  return s;
}

std::vector<Cyclotomic> XRaySnapshot::support() const {
  std::vector<Cyclotomic> out;
  for (const auto& [k, c] : buckets) out.push_back(k);
  return out;
}

XRaySnapshot xray(const FinitePointSet& F, const Direction& u) {
  if (F.order != u.order()) throw OrderMismatch(F.order, u.order());
  XRaySnapshot x{u, {}};
  const Cyclotomic offset = line_key(F.translation, u);
  for (const auto& z : F.points) ++x.buckets[line_key(z, u) + offset];
  return x;
}

XRaySnapshot xray(const std::vector<Cyclotomic>& points, const Direction& u) {
  XRaySnapshot x{u, {}};
  for (const auto& z : points) {
    if (z.order() != u.order()) throw OrderMismatch(z.order(), u.order());
    ++x.buckets[line_key(z, u)];
  }
  return x;
}

std::vector<Cyclotomic> projection(const XRaySnapshot& x) { return x.support(); }

Cyclotomic intersect_lines(const Cyclotomic& k1, const Direction& u1, const Cyclotomic& k2, const Direction& u2) {
  const Cyclotomic &a = u1.rep(), &b = u2.rep();
  const Cyclotomic d = a.conj() * b - a * b.conj();
  if (d.is_zero()) throw ParallelDirections("cannot intersect parallel lines");
  return (k1 * b - k2 * a) / d;
}

std::vector<Cyclotomic> grid(const std::vector<Cyclotomic>& points, const std::vector<Direction>& U) {
  if (U.size() < 2) throw InvalidArgument("a grid needs at least two directions");
  require_pairwise_nonparallel(U);
  std::vector<std::set<Cyclotomic>> supports;
  for (const auto& u : U) {
    const auto s = xray(points, u).support();
    supports.emplace_back(s.begin(), s.end());
  }
  const Cyclotomic &a = U[0].rep(), &b = U[1].rep();
  const Cyclotomic dinv = (a.conj() * b - a * b.conj()).inverse();
  std::vector<Cyclotomic> out;
  for (const auto& k1 : supports[0])
    for (const auto& k2 : supports[1]) {
      const Cyclotomic p = (k1 * b - k2 * a) * dinv;
      bool ok = true;
      for (std::size_t i = 2; i < U.size() && ok; ++i) ok = supports[i].count(line_key(p, U[i])) > 0;
      if (ok) out.push_back(p);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cyclotomic> grid(const FinitePointSet& F, const std::vector<Direction>& U) {
  return grid(F.absolute_points(), U);
}

bool is_unimodular_pair(const Cyclotomic& o, const Cyclotomic& o2) {
  if (o.is_zero() || o2.is_zero()) throw InvalidArgument("unimodular test needs nonzero elements");
  if (are_parallel(o, o2)) throw ParallelDirections("unimodular test needs non-parallel elements");
  const auto [a1, b1] = o.real_decompose();
  const auto [a2, b2] = o2.real_decompose();
  const Rational norm = field_norm_real(a1 * b2 - b1 * a2);
  return abs(norm) == 1;
}

std::pair<FinitePointSet, FinitePointSet> switching_pair(const std::vector<Direction>& U, int n) {
  if (U.empty()) throw InvalidArgument("switching pair needs at least one direction");
  require_pairwise_nonparallel(U);
  for (const auto& u : U)
    if (u.order() != n) throw OrderMismatch(u.order(), n);

  std::set<Cyclotomic> F{Cyclotomic(n)}, G{U[0].rep()};
  auto shifted = [](const std::set<Cyclotomic>& s, const Cyclotomic& v) {
    std::set<Cyclotomic> out;
    for (const auto& z : s) out.insert(z + v);
    return out;
  };
  auto disjoint = [](const std::set<Cyclotomic>& x, const std::set<Cyclotomic>& y) {
    for (const auto& z : x)
      if (y.count(z)) return false;
    return true;
  };
  for (std::size_t i = 1; i < U.size(); ++i) {
    for (long c = 1;; c *= 2) {
      const Cyclotomic v = U[i].rep() * Rational(c);
      const auto Fv = shifted(F, v), Gv = shifted(G, v);
      if (!disjoint(F, Gv) || !disjoint(G, Fv) || !disjoint(F, Fv) || !disjoint(G, Gv)) continue;
      std::set<Cyclotomic> F2 = F, G2 = G;
      F2.insert(Gv.begin(), Gv.end());
      G2.insert(Fv.begin(), Fv.end());
      F = std::move(F2);
      G = std::move(G2);
      break;
    }
  }
  return {FinitePointSet(n, {F.begin(), F.end()}), FinitePointSet(n, {G.begin(), G.end()})};
}

Cyclotomic centroid(const std::vector<Cyclotomic>& points) {
  if (points.empty()) throw InvalidArgument("centroid of an empty set");
  Cyclotomic s(points.front().order());
  for (const auto& z : points) s += z;
  return s * Rational(1, static_cast<long>(points.size()));
}

}  // namespace quasitomo
