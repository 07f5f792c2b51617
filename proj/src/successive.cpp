#include "quasitomo/successive.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "quasitomo/errors.hpp"

namespace quasitomo {

namespace {

// Euclidean norm of the zeta-block of the split coordinates.
double internal_half_norm(const Cyclotomic& w) {
  const auto x = w.split_coordinates();
  const std::size_t h = x.size() / 2;
  double s = 0;
  for (std::size_t i = h; i < x.size(); ++i) {
    const double v = x[i].get_d();
    s += v * v;
  }
  return std::sqrt(s);
}

SecondDirectionResult from_radius(double r, const Direction& u) {
  const int n = u.order();
  SecondDirectionResult res;
  res.r = r;
  const long q = std::max(2L, static_cast<long>(std::ceil(4 * r)));
  res.epsilon = Rational(1, q);
  res.auxiliary = Cyclotomic(n, Rational(-1)) + Cyclotomic::zeta(n) * Rational(q);
  res.direction = Direction(res.auxiliary / u.rep().conj());
  return res;
}

}  // namespace

std::vector<Cyclotomic> line_candidates(const FinitePointSet& F, const Direction& u, int extent) {
  if (F.order != u.order()) throw OrderMismatch(F.order, u.order());
  if (extent < 0) throw InvalidArgument("extent must be non-negative");
  const int n = F.order;
  const int h = cyclotomic_field(n).real_degree();
  std::vector<Cyclotomic> steps;
  std::vector<long> a(h, -extent);
  while (true) {
    std::vector<Rational> c(a.begin(), a.end());
    steps.push_back(RealCyclotomic(n, std::move(c)).to_cyclotomic() * u.rep());
    int i = 0;
    while (i < h && a[i] == extent) a[i++] = -extent;
    if (i == h) break;
    ++a[i];
  }
  std::set<Cyclotomic> out;
  for (const auto& f : F.points)
    for (const auto& s : steps) out.insert(f + s);
  return {out.begin(), out.end()};
}

std::size_t max_points_per_line(const std::vector<Cyclotomic>& G, const Direction& u) {
  std::size_t best = 0;
  for (const auto& [key, c] : xray(G, u).buckets) best = std::max(best, static_cast<std::size_t>(c));
  return best;
}

SecondDirectionResult second_direction(const FinitePointSet& F, const Direction& u, int extent) {
  if (F.order != u.order()) throw OrderMismatch(F.order, u.order());
  for (const auto& f : F.points)
    if (!f.is_integral()) throw InvalidArgument("point " + f.to_string() + " is not in the lattice");
  if (F.empty()) {
    auto res = from_radius(0, u);
    res.note = "empty set: any direction determines it";
    return res;
  }
  const Cyclotomic oc = u.rep().conj();
  double r = 0;
  for (const auto& f : F.points) r = std::max(r, internal_half_norm(f * oc));
  auto res = from_radius(r * 1.01, u);
  if (!F.translation.is_zero()) res.note = "computed on lattice coordinates";
  res.candidates = line_candidates(F, u, extent);
  if (max_points_per_line(res.candidates, res.direction) > 1)
    throw InternalError("second direction " + res.direction.rep().to_string() + " meets two candidate points on a line");
  return res;
}

SecondDirectionResult bounded_second_direction(const ModelSetSpec& spec, double R, const Direction& u) {
  spec.validate();
  if (!(R > 0)) throw InvalidArgument("diameter bound must be positive");
  if (u.order() != spec.order) throw OrderMismatch(u.order(), spec.order);
  const int n = spec.order;
  const auto& field = cyclotomic_field(n);
  const int phi = field.degree(), h = field.real_degree();

  const auto mk = minkowski_matrix(spec);
  Eigen::MatrixXd M(phi, phi);
  for (int i = 0; i < phi; ++i)
    for (int j = 0; j < phi; ++j) M(i, j) = mk[i][j];
  const auto& si = field.split_basis_inverse();
  Eigen::MatrixXd P(h, phi);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < phi; ++j) P(i, j) = si[h + i][j].get_d();
  const Eigen::MatrixXd A = P * M.inverse();
  const double op = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()(0);

  // bounds on |sigma_k((f - f') conj(o))| for each embedding
  const Cyclotomic oc = u.rep().conj();
  double s = std::pow(R * std::abs(oc.value()), 2);
  for (std::size_t j = 0; j < spec.window.size(); ++j) {
    double diam = 0;
    for (const auto& a : spec.window[j])
      for (const auto& b : spec.window[j]) diam = std::max(diam, std::abs(a - b));
    s += std::pow(diam * std::abs(oc.evaluate(spec.star_exponents[j])), 2);
  }
  auto res = from_radius(op * std::sqrt(s) * 1.01, u);
  res.note = "valid for every subset of diameter below " + std::to_string(R);
  return res;
}

}  // namespace quasitomo
