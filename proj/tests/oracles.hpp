#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <map>
#include <random>
#include <vector>

#include "quasitomo/model_set.hpp"
#include "quasitomo/xray.hpp"

namespace quasitomo::testing {

/// Every subset of S whose X-rays in u and v agree with those of F.
/// Exhaustive: per u-line of S, every choice of the required size.
inline std::vector<std::vector<Cyclotomic>> sets_with_same_xrays(const std::vector<Cyclotomic>& S,
                                                                 const std::vector<Cyclotomic>& F, const Direction& u,
                                                                 const Direction& v) {
  const auto xu = xray(F, u), xv = xray(F, v);
  std::map<Cyclotomic, std::vector<Cyclotomic>> lines;
  for (const auto& s : S) lines[line_key(s, u)].push_back(s);
  for (const auto& [k, c] : xu.buckets)
    if (!lines.count(k)) return {};
  std::vector<std::pair<std::vector<Cyclotomic>, long>> groups;
  for (auto& [k, pts] : lines) {
    const auto it = xu.buckets.find(k);
    groups.emplace_back(pts, it == xu.buckets.end() ? 0 : it->second);
  }
  std::vector<std::vector<Cyclotomic>> out;
  std::vector<Cyclotomic> cur;
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == groups.size()) {
      if (xray(cur, v) == xv) {
        auto s = cur;
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
      }
      return;
    }
    const auto& [pts, need] = groups[g];
    if (need > static_cast<long>(pts.size())) return;
    std::vector<bool> pick(pts.size(), false);
    std::fill(pick.begin(), pick.begin() + need, true);
    do {
      const std::size_t mark = cur.size();
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (pick[i]) cur.push_back(pts[i]);
      self(self, g + 1);
      cur.resize(mark);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  };
  rec(rec, 0);
  return out;
}

/// Random subset of lam of diameter below R: points within R/2 of a random
/// anchor, each kept with probability 1/2 (the anchor always).
inline std::vector<Cyclotomic> random_small_subset(std::mt19937& rng, const FinitePointSet& lam, double R,
                                                   std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> pick(0, lam.size() - 1);
  std::bernoulli_distribution keep(0.5);
  const Cyclotomic a = lam.points[pick(rng)];
  std::vector<Cyclotomic> out{a};
  for (const auto& z : lam.points)
    if (z != a && std::abs((z - a).value()) < R / 2 * 0.999 && out.size() < max_size && keep(rng)) out.push_back(z);
  std::sort(out.begin(), out.end());
  return out;
}

// Independent membership filter over a full coefficient cube.
inline std::vector<Cyclotomic> brute_force(const ModelSetSpec& spec, Planar center, double radius, long bound) {
  const int n = spec.order, phi = cyclotomic_field(n).degree();
  auto root = [&](long e) { return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e) / n); };
  std::vector<long> c(phi, -bound);
  std::vector<Cyclotomic> out;
  const Planar shift = spec.translation.value();
  while (true) {
    Planar phys = shift;
    for (int j = 0; j < phi; ++j) phys += static_cast<double>(c[j]) * root(j);
    bool in_disk = std::abs(phys - center) <= radius;
    if (std::abs(std::abs(phys - center) - radius) < 1e-6) {
      // exact tie-break through the squared modulus
      Cyclotomic w = spec.translation + Cyclotomic(n, std::vector<Integer>(c.begin(), c.end()), 1) -
                     Cyclotomic(n, Rational(center.real())) - Cyclotomic::zeta(n, n / 4) * Rational(center.imag());
      const Cyclotomic sq = w * w.conj();
      if (sq.is_rational()) in_disk = sq.to_rational() <= Rational(radius) * Rational(radius);
    }
    if (in_disk) {
      bool inside = true;
      for (std::size_t p = 0; p < spec.star_exponents.size() && inside; ++p) {
        Planar s = 0;
        for (int j = 0; j < phi; ++j) s += static_cast<double>(c[j]) * root(static_cast<long>(j) * spec.star_exponents[p]);
        s -= spec.window_shift[p];
        const auto& w = spec.window[p];
        for (std::size_t e = 0; e < w.size(); ++e) {
          const Planar a = w[e], b = w[(e + 1) % w.size()];
          const Planar d = b - a, q = s - a;
          if ((d.real() * q.imag() - d.imag() * q.real()) / std::abs(d) < spec.guard_band) inside = false;
        }
      }
      if (inside) out.emplace_back(n, std::vector<Integer>(c.begin(), c.end()), 1);
    }
    int i = 0;
    while (i < phi && c[i] == bound) c[i++] = -bound;
    if (i == phi) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// |c_i| <= ||M^-1||_inf * max_j |v_j| for the Minkowski image v of z.
inline long oracle_bound(const ModelSetSpec& spec, double radius) {
  const int n = spec.order, phi = cyclotomic_field(n).degree();
  std::vector<int> ks{1};
  ks.insert(ks.end(), spec.star_exponents.begin(), spec.star_exponents.end());
  Eigen::MatrixXd m(phi, phi);
  for (std::size_t p = 0; p < ks.size(); ++p)
    for (int j = 0; j < phi; ++j) {
      m(2 * p, j) = std::cos(2 * std::numbers::pi * j * ks[p] / n);
      m(2 * p + 1, j) = std::sin(2 * std::numbers::pi * j * ks[p] / n);
    }
  double vmax = radius + std::abs(spec.translation.value());
  for (std::size_t p = 0; p < spec.window.size(); ++p)
    for (Planar v : spec.window[p]) vmax = std::max(vmax, std::abs(v + spec.window_shift[p]));
  const double norm = m.inverse().cwiseAbs().rowwise().sum().maxCoeff();
  return static_cast<long>(std::ceil(norm * vmax)) + 2;
}

}  // namespace quasitomo::testing
