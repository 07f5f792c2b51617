#include "quasitomo/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "quasitomo/errors.hpp"

namespace quasitomo {

int orientation(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order() != b.order()) throw OrderMismatch(a.order(), b.order());
  const Cyclotomic d = a.conj() * b - a * b.conj();
  if (d.is_zero()) return 0;
  const double v = d.value().imag();
  const double scale = std::abs(a.value()) * std::abs(b.value());
  if (!(std::abs(v) > 1e-12 * scale)) throw InternalError("orientation sign not resolved in double precision");
  return v > 0 ? 1 : -1;
}

int orientation(const Cyclotomic& p, const Cyclotomic& q, const Cyclotomic& r) { return orientation(q - p, r - p); }

PolygonInPlane::PolygonInPlane(int n, std::vector<Cyclotomic> vertices) : n_(n), vertices_(std::move(vertices)) {
  const std::size_t m = vertices_.size();
  if (m < 3) throw InvalidArgument("a polygon needs at least three vertices");
  for (const auto& v : vertices_)
    if (v.order() != n) throw OrderMismatch(v.order(), n);
  sense_ = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % m];
    if (a == b) throw InvalidArgument("repeated polygon vertex");
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i || j == (i + 1) % m) continue;
      const int s = orientation(a, b, vertices_[j]);
      if (s == 0 || (sense_ != 0 && s != sense_)) throw InvalidArgument("vertices do not form a strictly convex polygon");
      sense_ = s;
    }
  }
}

bool PolygonInPlane::contains(const Cyclotomic& p) const {
  const std::size_t m = vertices_.size();
  for (std::size_t i = 0; i < m; ++i)
    if (orientation(vertices_[i], vertices_[(i + 1) % m], p) == -sense_) return false;
  return true;
}

bool affinely_regular_exists(int m, int n) {
  if (m < 3 || n < 3) throw InvalidArgument("affinely regular test needs m >= 3 and n >= 3");
  if (m == 3 || m == 4 || m == 6) return true;
  if (n % m == 0) return true;
  return m % 2 == 0 && (m / 2) % 2 == 1 && n % (m / 2) == 0;
}

PolygonInPlane affine_regular_witness(int m, int n) {
  if (!affinely_regular_exists(m, n))
    throw NotFound("no affinely regular " + std::to_string(m) + "-gon in order " + std::to_string(n));
  std::vector<Cyclotomic> v;
  if (m == 3 || m == 4 || m == 6) {
    const Cyclotomic zn = Cyclotomic::zeta(n);
    for (int j = 0; j < m; ++j) {
      const auto [a, b] = Cyclotomic::zeta(m, j).real_decompose();
      v.push_back(Cyclotomic(n, a.to_rational()) + zn * b.to_rational());
    }
  } else if (n % m == 0) {
    for (int j = 0; j < m; ++j) v.push_back(Cyclotomic::zeta(n, static_cast<long>(j) * (n / m)));
  } else {
    // zeta_{2n} = -zeta_n^{(n+1)/2} for odd n
    const Cyclotomic z2n = -Cyclotomic::zeta(n, (n + 1) / 2);
    const Cyclotomic step = [&] {
      Cyclotomic s(n, Rational(1));
      for (int i = 0; i < 2 * n / m; ++i) s = s * z2n;
      return s;
    }();
    Cyclotomic cur(n, Rational(1));
    for (int j = 0; j < m; ++j, cur = cur * step) v.push_back(cur);
  }
  return PolygonInPlane(n, std::move(v));
}

RealCyclotomic cross_ratio(const Direction& u1, const Direction& u2, const Direction& u3, const Direction& u4) {
  require_pairwise_nonparallel({u1, u2, u3, u4});
  auto D = [](const Direction& a, const Direction& b) {
    return a.rep().conj() * b.rep() - a.rep() * b.rep().conj();
  };
  const Cyclotomic x = D(u1, u3) * D(u2, u4) / (D(u2, u3) * D(u1, u4));
  if (!x.is_real()) throw InternalError("cross ratio is not in the real subfield: " + x.to_string());
  return x.to_real();
}

RealCyclotomic cross_ratio_sorted(std::vector<Direction> U) {
  if (U.size() != 4) throw InvalidArgument("cross ratio needs four directions");
  U = sort_by_angle(std::move(U));
  return cross_ratio(U[0], U[1], U[2], U[3]);
}

namespace {

struct Decomposed {
  Cyclotomic o;
  RealCyclotomic alpha, beta;
};

Cyclotomic compose(const RealCyclotomic& a, const RealCyclotomic& b, int n) {
  return a.to_cyclotomic() + b.to_cyclotomic() * Cyclotomic::zeta(n);
}

}  // namespace

PolygonInPlane build_u_polygon_3(const Cyclotomic& o1, const Cyclotomic& o2, const Cyclotomic& o3) {
  const int n = o1.order();
  std::vector<Direction> U;
  for (const auto* o : {&o1, &o2, &o3}) {
    if (o->order() != n) throw OrderMismatch(o->order(), n);
    U.emplace_back(*o);
  }
  require_pairwise_nonparallel(U);

  std::vector<Decomposed> d;
  for (const auto* o : {&o1, &o2, &o3}) {
    auto [a, b] = o->real_decompose();
    d.push_back({*o, a, b});
  }
  auto real_it = std::find_if(d.begin(), d.end(), [](const Decomposed& x) { return x.beta.is_zero(); });
  std::vector<Decomposed> s;
  if (real_it == d.end()) {
    const RealCyclotomic B = d[0].beta * d[1].beta * d[2].beta;
    const bool flip = B.value() < 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const RealCyclotomic f = d[(i + 1) % 3].beta * d[(i + 2) % 3].beta;
      RealCyclotomic a = d[i].alpha * f, b = B;
      if (flip) a = -a, b = -b;
      s.push_back({compose(a, b, n), a, b});
    }
    std::sort(s.begin(), s.end(), [](const Decomposed& x, const Decomposed& y) { return x.alpha.value() > y.alpha.value(); });
  } else {
    d.erase(real_it);
    RealCyclotomic b = d[0].beta * d[1].beta;
    const bool flip = b.value() < 0;
    for (std::size_t i = 0; i < 2; ++i) {
      RealCyclotomic a = d[i].alpha * d[1 - i].beta;
      RealCyclotomic bb = b;
      if (flip) a = -a, bb = -bb;
      s.push_back({compose(a, bb, n), a, bb});
    }
    std::sort(s.begin(), s.end(), [](const Decomposed& x, const Decomposed& y) { return x.alpha.value() > y.alpha.value(); });
    const double top = std::max(s[0].alpha.value(), 0.0);
    const RealCyclotomic M(n, Rational(static_cast<long>(std::floor(top)) + 1));
    s.insert(s.begin(), Decomposed{M.to_cyclotomic(), M, RealCyclotomic(n)});
  }
  if (!(s[0].alpha.value() > s[1].alpha.value() && s[1].alpha.value() > s[2].alpha.value()))
    throw InvalidArgument("could not normalize " + o1.to_string() + ", " + o2.to_string() + ", " + o3.to_string() +
                          " to strictly decreasing alpha");

  const RealCyclotomic h = s[1].alpha * s[2].beta - s[2].alpha * s[1].beta;
  const RealCyclotomic k = s[0].alpha * s[2].beta - s[2].alpha * s[0].beta;
  const RealCyclotomic l = s[0].alpha * s[1].beta - s[1].alpha * s[0].beta;
  const Cyclotomic a = h.to_cyclotomic() * s[0].o, b = k.to_cyclotomic() * s[1].o, c = l.to_cyclotomic() * s[2].o;
  PolygonInPlane P(n, {Cyclotomic(n), a, a + b, a + b + c, b + c, c});
  if (!is_u_polygon(P, U)) throw InternalError("hexagon construction is not a U-polygon");
  return P;
}

bool is_u_polygon(const PolygonInPlane& P, const std::vector<Direction>& U) {
  for (const auto& u : U) {
    if (u.order() != P.order()) throw OrderMismatch(u.order(), P.order());
    std::map<Cyclotomic, int> count;
    for (const auto& v : P.vertices()) ++count[line_key(v, u)];
    for (const auto& [key, c] : count)
      if (c < 2) return false;
  }
  return true;
}

namespace {

Cyclotomic lin(int n, long x, long y) { return Cyclotomic(n, Rational(x)) + Cyclotomic::zeta(n) * Rational(y); }

std::vector<Direction> lin_dirs(int n, std::initializer_list<std::pair<long, long>> c) {
  std::vector<Direction> out;
  for (auto [x, y] : c) out.emplace_back(lin(n, x, y));
  return out;
}

}  // namespace

std::pair<std::vector<Direction>, PolygonInPlane> dodecagon_family(int n) {
  const std::pair<long, long> half[] = {{3, 1}, {3, 2}, {2, 3}, {1, 3}, {-1, 2}, {-2, 1}};
  std::vector<Cyclotomic> v;
  for (auto [x, y] : half) v.push_back(lin(n, x, y));
  for (auto [x, y] : half) v.push_back(lin(n, -x, -y));
  return {lin_dirs(n, {{1, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 1}, {-1, 1}}), PolygonInPlane(n, std::move(v))};
}

std::pair<std::vector<Direction>, PolygonInPlane> octagon_family(int n) {
  const std::pair<long, long> c[] = {{1, 0}, {0, 1}, {-1, 1}, {-2, 0}, {-2, -1}, {-1, -2}, {0, -2}, {1, -1}};
  std::vector<Cyclotomic> v;
  for (auto [x, y] : c) v.push_back(lin(n, x, y));
  return {lin_dirs(n, {{1, -1}, {1, 0}, {1, 1}, {0, 1}}), PolygonInPlane(n, std::move(v))};
}

std::vector<Cyclotomic> convex_hull(std::vector<Cyclotomic> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 1) return points;
  auto lower_left = [](const Cyclotomic& a, const Cyclotomic& b) {
    const auto va = a.value(), vb = b.value();
    return va.real() < vb.real() || (va.real() == vb.real() && va.imag() < vb.imag());
  };
  const std::size_t start = std::min_element(points.begin(), points.end(), lower_left) - points.begin();
  std::vector<Cyclotomic> hull;
  std::size_t cur = start;
  do {
    hull.push_back(points[cur]);
    std::size_t next = cur == 0 ? 1 : 0;
    for (std::size_t q = 0; q < points.size(); ++q) {
      if (q == cur || q == next) continue;
      const int o = orientation(points[cur], points[next], points[q]);
      if (o < 0 || (o == 0 && std::abs((points[q] - points[cur]).value()) > std::abs((points[next] - points[cur]).value())))
        next = q;
    }
    cur = next;
    if (hull.size() > points.size()) throw InternalError("convex hull did not close");
  } while (cur != start);
  return hull;
}

namespace {

bool in_hull(const std::vector<Cyclotomic>& hull, const Cyclotomic& p) {
  if (hull.size() == 1) return p == hull[0];
  if (hull.size() == 2) {
    const Cyclotomic d = hull[1] - hull[0], e = p - hull[0];
    if (orientation(d, e) != 0) return false;
    const double s = (e.value() / d.value()).real();
    return e.is_zero() || p == hull[1] || (s > 0 && s < 1);
  }
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (orientation(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  return true;
}

}  // namespace

bool is_convex_in(const std::vector<Cyclotomic>& F, const FinitePointSet& lambda) {
  if (F.empty()) return true;
  const auto hull = convex_hull(F);
  const std::set<Cyclotomic> fs(F.begin(), F.end());
  for (const auto& p : lambda.absolute_points())
    if (in_hull(hull, p) && !fs.count(p)) return false;
  return true;
}

std::pair<FinitePointSet, FinitePointSet> u_polygon_switch_sets(const PolygonInPlane& P, const std::vector<Direction>& U,
                                                                const FinitePointSet& lambda) {
  if (P.order() != lambda.order) throw OrderMismatch(P.order(), lambda.order);
  if (!is_u_polygon(P, U)) throw InvalidArgument("polygon is not a U-polygon for the given directions");
  const auto abs_pts = lambda.absolute_points();
  const std::set<Cyclotomic> lam(abs_pts.begin(), abs_pts.end());
  std::set<Cyclotomic> V, W;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& v = P.vertices()[i];
    if (!lam.count(v)) throw NotFound("vertex " + v.to_string() + " is not a point of the model set");
    (i % 2 == 0 ? V : W).insert(v);
  }
  std::vector<Cyclotomic> f1, f2;
  for (const auto& p : abs_pts) {
    if (!P.contains(p)) continue;
    const bool inV = V.count(p) > 0, inW = W.count(p) > 0;
    if (!inW) f1.push_back(p);
    if (!inV) f2.push_back(p);
  }
  for (const auto* f : {&f1, &f2})
    if (!is_convex_in(*f, lambda)) throw InternalError("switch set is not convex in the model set");
  for (const auto& u : U)
    if (!(xray(f1, u) == xray(f2, u))) throw InternalError("switch sets have different X-rays");
  auto rel = [&](const std::vector<Cyclotomic>& pts) {
    std::vector<Cyclotomic> out;
    for (const auto& p : pts) out.push_back(p - lambda.translation);
    return FinitePointSet(lambda.order, lambda.translation, std::move(out));
  };
  auto out = std::make_pair(rel(f1), rel(f2));
  if (out.first == out.second) throw InternalError("switch sets coincide");
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Determined: return "Determined";
    case Verdict::NotDetermined: return "NotDetermined";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(CertificateReason r) {
  switch (r) {
    case CertificateReason::CardinalityLE3: return "CardinalityLE3";
    case CertificateReason::UPolygonWitness: return "UPolygonWitness";
    case CertificateReason::N1Excluded: return "N1Excluded";
    case CertificateReason::N2Excluded: return "N2Excluded";
    case CertificateReason::TwoPrimeExcluded: return "TwoPrimeExcluded";
    case CertificateReason::Card7InU4Q: return "Card7InU4Q";
    case CertificateReason::CrossRatioInExclusionSet: return "CrossRatioInExclusionSet";
  }
  return "?";
}

namespace {

bool subset_of(const std::vector<Direction>& U, const std::vector<Direction>& family) {
  return std::all_of(U.begin(), U.end(), [&](const Direction& u) {
    return std::any_of(family.begin(), family.end(), [&](const Direction& f) { return f.parallel_to(u); });
  });
}

PolygonInPlane hexagon_witness(const std::vector<Direction>& U, int n) {
  std::vector<Cyclotomic> reps;
  for (const auto& u : U) reps.push_back(u.rep());
  const std::pair<long, long> pool[] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}, {2, 1}, {1, -2}, {2, -1}};
  for (auto [x, y] : pool) {
    if (reps.size() == 3) break;
    const Cyclotomic c = lin(n, x, y);
    if (std::none_of(reps.begin(), reps.end(), [&](const Cyclotomic& r) { return are_parallel(r, c); }))
      reps.push_back(c);
  }
  return build_u_polygon_3(reps[0], reps[1], reps[2]);
}

CertificateReason reason_for(CrossRatioOutcome o) {
  switch (o) {
    case CrossRatioOutcome::DeterminedByN1: return CertificateReason::N1Excluded;
    case CrossRatioOutcome::DeterminedByN2: return CertificateReason::N2Excluded;
    case CrossRatioOutcome::DeterminedByTwoPrime: return CertificateReason::TwoPrimeExcluded;
    case CrossRatioOutcome::Inconclusive: break;
  }
  return CertificateReason::CrossRatioInExclusionSet;
}

}  // namespace

DeterminationCertificate certify_convex_determination(const std::vector<Direction>& U, int n) {
  for (const auto& u : U)
    if (u.order() != n) throw OrderMismatch(u.order(), n);
  DeterminationCertificate cert;
  cert.directions = sort_by_angle(U);

  if (U.size() <= 3) {
    cert.verdict = Verdict::NotDetermined;
    cert.reason = CertificateReason::CardinalityLE3;
    cert.witness = hexagon_witness(cert.directions, n);
    return cert;
  }

  for (auto family : {dodecagon_family(n), octagon_family(n)}) {
    if (subset_of(U, family.first)) {
      cert.verdict = Verdict::NotDetermined;
      cert.reason = CertificateReason::UPolygonWitness;
      cert.witness = family.second;
      return cert;
    }
  }

  const auto& D = cert.directions;
  bool all_rational = true;
  const std::size_t m = D.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c)
        for (std::size_t d = c + 1; d < m; ++d) {
          const auto x = cross_ratio(D[a], D[b], D[c], D[d]);
          all_rational = all_rational && x.is_rational();
          const auto v = classify_cross_ratio(x);
          if (v.verdict != CrossRatioOutcome::Inconclusive) {
            cert.verdict = Verdict::Determined;
            cert.reason = reason_for(v.verdict);
            cert.deciding_quadruple = {D[a], D[b], D[c], D[d]};
            cert.cross_ratio = v;
            return cert;
          }
        }

  if (m >= 7 && all_rational) {
    cert.verdict = Verdict::Determined;
    cert.reason = CertificateReason::Card7InU4Q;
    return cert;
  }
  cert.verdict = Verdict::Inconclusive;
  cert.reason = CertificateReason::CrossRatioInExclusionSet;
  return cert;
}

}  // namespace quasitomo
