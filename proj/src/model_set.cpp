#include "quasitomo/model_set.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <thread>

#include "quasitomo/errors.hpp"

namespace quasitomo {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(Planar a, Planar b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Signed distance of p to the supporting lines of a counter-clockwise polygon,
// minimised over edges.
double polygon_margin(const ConvexPolygon& poly, Planar p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Planar a = poly[i], b = poly[(i + 1) % poly.size()];
    best = std::min(best, cross(b - a, p - a) / std::abs(b - a));
  }
  return best;
}

std::vector<Integer> to_integers(const std::vector<long>& c) { return {c.begin(), c.end()}; }

// |t + z - center| <= radius, decided exactly when the squared distance is
// rational and the float answer is within rounding of the boundary.
bool in_disk(const Cyclotomic& t, const std::vector<long>& coeffs, Planar offset_point, Planar center, double radius) {
  const double d = std::abs(offset_point - center);
  if (std::abs(d - radius) > 1e-9 * std::max(1.0, radius)) return d <= radius;
  const int n = t.order();
  Cyclotomic w = t + Cyclotomic(n, to_integers(coeffs), 1);
  w -= Cyclotomic(n, Rational(center.real()));
  if (center.imag() != 0) {
    // i lies in Q(zeta_n) only when 4 | n
    if (n % 4) return d <= radius;
    w -= Cyclotomic::zeta(n, n / 4) * Rational(center.imag());
  }
  const Cyclotomic sq = w * w.conj();
  if (!sq.is_rational()) return d <= radius;
  return sq.to_rational() <= Rational(radius) * Rational(radius);
}

}  // namespace

std::string to_string(WindowTest w) {
  switch (w) {
    case WindowTest::Inside: return "Inside";
    case WindowTest::Outside: return "Outside";
    case WindowTest::BoundaryBand: return "BoundaryBand";
  }
  return "?";
}

ConvexPolygon regular_polygon(int m, double circumradius, double rotation) {
  ConvexPolygon p;
  for (int j = 0; j < m; ++j) p.push_back(std::polar(circumradius, rotation + 2 * kPi * j / m));
  return p;
}

std::vector<int> default_star_exponents(int n) {
  const auto& e = cyclotomic_field(n).embedding_exponents();
  return {e.begin() + 1, e.end()};
}

void ModelSetSpec::validate() const {
  const auto& field = cyclotomic_field(order);
  if (translation.order() != order) throw OrderMismatch(translation.order(), order);
  std::set<int> seen;
  for (int k : star_exponents) {
    const int r = ((k % order) + order) % order;
    if (std::gcd(r, order) != 1) throw InvalidArgument("star exponent " + std::to_string(k) + " not coprime to order");
    const int rep = std::min(r, order - r);
    if (rep == 1) throw InvalidArgument("star exponent " + std::to_string(k) + " is +-1");
    if (!seen.insert(rep).second) throw InvalidArgument("star exponents repeat a conjugate pair");
  }
  if (static_cast<int>(seen.size()) != field.real_degree() - 1)
    throw InvalidArgument("star exponents must cover every non-identity conjugate pair");
  if (window.size() != star_exponents.size()) throw InvalidArgument("need one window polygon per internal plane");
  if (window_shift.size() != star_exponents.size()) throw InvalidArgument("need one window shift per internal plane");
  for (const auto& poly : window) {
    if (poly.size() < 3) throw InvalidArgument("window polygon needs at least three vertices");
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Planar a = poly[i], b = poly[(i + 1) % poly.size()], c = poly[(i + 2) % poly.size()];
      if (cross(b - a, c - b) <= 0) throw InvalidArgument("window polygon must be strictly convex and counter-clockwise");
    }
  }
  if (!(guard_band >= 0)) throw InvalidArgument("guard band must be non-negative");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"square", "triangle", "ab", "ttt", "shield"};
  return names;
}

ModelSetSpec preset_spec(std::string_view name) {
  ModelSetSpec s;
  auto finish = [&](int n) {
    s.order = n;
    s.translation = Cyclotomic(n);
    s.star_exponents = default_star_exponents(n);
    s.preset = std::string(name);
  };
  if (name == "square") {
    finish(4);
  } else if (name == "triangle") {
    finish(3);
  } else if (name == "ab") {
    finish(8);
    s.window = {regular_polygon(8, 1 / (2 * std::sin(kPi / 8)), kPi / 8)};
    s.window_shift = {Planar(0, 0)};
  } else if (name == "ttt") {
    finish(5);
    const double tau = std::numbers::phi;
    const double edge = tau / std::sqrt(tau + 2);
    s.window = {regular_polygon(10, edge / (2 * std::sin(kPi / 10)), kPi / 10)};
    s.window_shift = {Planar(1e-3 / kPi, 1e-3 / std::numbers::e)};
  } else if (name == "shield") {
    finish(12);
    s.window = {regular_polygon(12, 1 / (2 * std::sin(kPi / 12)), kPi / 12)};
    s.window_shift = {Planar(1e-3 / kPi, 1e-3 / std::numbers::e)};
  } else {
    throw InvalidArgument("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

// ------------------------------------------------------------ FinitePointSet

FinitePointSet::FinitePointSet(int n, std::vector<Cyclotomic> pts) : FinitePointSet(n, Cyclotomic(n), std::move(pts)) {}

FinitePointSet::FinitePointSet(int n, Cyclotomic t, std::vector<Cyclotomic> pts)
    : order(n), translation(std::move(t)), points(std::move(pts)) {
  if (translation.order() != n) throw OrderMismatch(translation.order(), n);
  for (const auto& z : points) {
    if (z.order() != n) throw OrderMismatch(z.order(), n);
    if (!z.is_integral()) throw InvalidArgument("point " + z.to_string() + " is not a cyclotomic integer");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

bool FinitePointSet::contains(const Cyclotomic& z) const { return std::binary_search(points.begin(), points.end(), z); }

std::vector<Cyclotomic> FinitePointSet::absolute_points() const {
  std::vector<Cyclotomic> out;
  out.reserve(points.size());
  for (const auto& z : points) out.push_back(translation + z);
  return out;
}

// ------------------------------------------------------------ windows

InternalPoint star_map(const Cyclotomic& z, const ModelSetSpec& spec) {
  if (z.order() != spec.order) throw OrderMismatch(z.order(), spec.order);
  InternalPoint out;
  for (int k : spec.star_exponents) out.push_back(z.evaluate(k));
  return out;
}

double window_margin(const ModelSetSpec& spec, const InternalPoint& pt) {
  if (pt.size() != spec.window.size()) throw InvalidArgument("internal point has the wrong dimension");
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pt.size(); ++i) m = std::min(m, polygon_margin(spec.window[i], pt[i] - spec.window_shift[i]));
  return m;
}

WindowTest window_contains(const ModelSetSpec& spec, const InternalPoint& pt) {
  const double m = window_margin(spec, pt);
  if (m >= spec.guard_band) return WindowTest::Inside;
  if (m <= -spec.guard_band) return WindowTest::Outside;
  return WindowTest::BoundaryBand;
}

InternalPoint window_centroid(const ModelSetSpec& spec) {
  InternalPoint out;
  for (std::size_t i = 0; i < spec.window.size(); ++i) {
    const auto& p = spec.window[i];
    double area = 0;
    Planar c = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const Planar a = p[j], b = p[(j + 1) % p.size()];
      const double w = cross(a, b);
      area += w;
      c += (a + b) * w;
    }
    out.push_back(c / (3 * area) + spec.window_shift[i]);
  }
  return out;
}

WindowTest classify_point(const Cyclotomic& z, const ModelSetSpec& spec) { return window_contains(spec, star_map(z, spec)); }

// ------------------------------------------------------------ generation

std::vector<std::vector<double>> minkowski_matrix(const ModelSetSpec& spec) {
  const int phi = cyclotomic_field(spec.order).degree();
  std::vector<int> ks{1};
  ks.insert(ks.end(), spec.star_exponents.begin(), spec.star_exponents.end());
  std::vector<std::vector<double>> m;
  for (int k : ks) {
    std::vector<double> re(phi), im(phi);
    for (int j = 0; j < phi; ++j) {
      const Planar v = std::polar(1.0, 2 * kPi * ((static_cast<long>(j) * k) % spec.order) / spec.order);
      re[j] = v.real();
      im[j] = v.imag();
    }
    m.push_back(std::move(re));
    m.push_back(std::move(im));
  }
  return m;
}

namespace {

struct Box {
  std::vector<double> lo, hi;  // per Minkowski row
};

Box target_box(const ModelSetSpec& spec, Planar center, double radius) {
  const Planar c = center - spec.translation.value();
  Box b;
  b.lo = {c.real() - radius, c.imag() - radius};
  b.hi = {c.real() + radius, c.imag() + radius};
  for (std::size_t i = 0; i < spec.window.size(); ++i) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (Planar v : spec.window[i]) {
      v += spec.window_shift[i];
      x0 = std::min(x0, v.real());
      x1 = std::max(x1, v.real());
      y0 = std::min(y0, v.imag());
      y1 = std::max(y1, v.imag());
    }
    const double g = spec.guard_band;
    b.lo.insert(b.lo.end(), {x0 - g, y0 - g});
    b.hi.insert(b.hi.end(), {x1 + g, y1 + g});
  }
  return b;
}

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
  Eigen::MatrixXd e(m.size(), m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) e(r, c) = m[r][c];
  return e;
}

class BoxEnumerator {
 public:
  BoxEnumerator(const Eigen::MatrixXd& m, Box box, std::vector<std::pair<long, long>> range)
      : m_(m), box_(std::move(box)), range_(std::move(range)), dim_(static_cast<int>(m.rows())) {
    rest_lo_.assign(dim_ + 1, Eigen::VectorXd::Zero(dim_));
    rest_hi_.assign(dim_ + 1, Eigen::VectorXd::Zero(dim_));
    for (int i = dim_ - 1; i >= 0; --i)
      for (int r = 0; r < dim_; ++r) {
        const double a = range_[i].first * m_(r, i), b = range_[i].second * m_(r, i);
        rest_lo_[i](r) = rest_lo_[i + 1](r) + std::min(a, b);
        rest_hi_[i](r) = rest_hi_[i + 1](r) + std::max(a, b);
      }
  }

  template <class Sink>
  void run(long first_lo, long first_hi, Sink&& sink) const {
    Eigen::VectorXd partial = Eigen::VectorXd::Zero(dim_);
    std::vector<long> c(dim_, 0);
    recurse(0, first_lo, first_hi, partial, c, sink);
  }

 private:
  bool feasible_range(int i, const Eigen::VectorXd& partial, long& lo, long& hi) const {
    constexpr double slack = 1e-7;
    double flo = static_cast<double>(lo), fhi = static_cast<double>(hi);
    for (int r = 0; r < dim_; ++r) {
      const double a = box_.lo[r] - partial(r) - rest_hi_[i + 1](r) - slack;
      const double b = box_.hi[r] - partial(r) - rest_lo_[i + 1](r) + slack;
      const double coef = m_(r, i);
      if (std::abs(coef) < 1e-12) {
        if (a > 0 || b < 0) return false;
        continue;
      }
      double x = a / coef, y = b / coef;
      if (coef < 0) std::swap(x, y);
      flo = std::max(flo, x);
      fhi = std::min(fhi, y);
      if (flo > fhi) return false;
    }
    lo = static_cast<long>(std::ceil(flo));
    hi = static_cast<long>(std::floor(fhi));
    return lo <= hi;
  }

  template <class Sink>
  void recurse(int i, long lo, long hi, Eigen::VectorXd& partial, std::vector<long>& c, Sink& sink) const {
    if (!feasible_range(i, partial, lo, hi)) return;
    for (long v = lo; v <= hi; ++v) {
      c[i] = v;
      partial += static_cast<double>(v) * m_.col(i);
      if (i + 1 == dim_)
        sink(c, partial);
      else
        recurse(i + 1, range_[i + 1].first, range_[i + 1].second, partial, c, sink);
      partial -= static_cast<double>(v) * m_.col(i);
    }
    c[i] = 0;
  }

  const Eigen::MatrixXd& m_;
  Box box_;
  std::vector<std::pair<long, long>> range_;
  int dim_;
  std::vector<Eigen::VectorXd> rest_lo_, rest_hi_;
};

}  // namespace

std::vector<std::pair<long, long>> coefficient_box(const ModelSetSpec& spec, Planar center, double radius) {
  const Box box = target_box(spec, center, radius);
  const Eigen::MatrixXd inv = to_eigen(minkowski_matrix(spec)).inverse();
  std::vector<std::pair<long, long>> out;
  for (int i = 0; i < inv.rows(); ++i) {
    double mid = 0, half = 0;
    for (int j = 0; j < inv.cols(); ++j) {
      mid += inv(i, j) * (box.lo[j] + box.hi[j]) / 2;
      half += std::abs(inv(i, j)) * (box.hi[j] - box.lo[j]) / 2;
    }
    out.emplace_back(static_cast<long>(std::floor(mid - half)) - 1, static_cast<long>(std::ceil(mid + half)) + 1);
  }
  return out;
}

FinitePointSet generate(const ModelSetSpec& spec, Planar center, double radius, unsigned threads) {
  spec.validate();
  if (!(radius > 0)) throw InvalidArgument("radius must be positive");
  const Eigen::MatrixXd m = to_eigen(minkowski_matrix(spec));
  const auto range = coefficient_box(spec, center, radius);
  const BoxEnumerator en(m, target_box(spec, center, radius), range);
  const int planes = spec.internal_planes();

  auto work = [&](long lo, long hi, std::vector<std::vector<long>>& out) {
    InternalPoint star(planes);
    en.run(lo, hi, [&](const std::vector<long>& coeffs, const Eigen::VectorXd& v) {
      if (!in_disk(spec.translation, coeffs, Planar(v(0), v(1)) + spec.translation.value(), center, radius)) return;
      for (int p = 0; p < planes; ++p) star[p] = Planar(v(2 + 2 * p), v(3 + 2 * p));
      if (planes > 0) {
        const WindowTest w = window_contains(spec, star);
        if (w == WindowTest::Outside) return;
        if (w == WindowTest::BoundaryBand && !spec.closed_window) {
          Cyclotomic z(spec.order, to_integers(coeffs), 1);
          throw NonGenericConfiguration("star image of " + z.to_string() +
                                        " lies within the guard band of the window boundary; shift tau");
        }
      }
      out.push_back(coeffs);
    });
  };

  const long lo = range[0].first, hi = range[0].second;
  const long span = hi - lo + 1;
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(span)));
  std::vector<std::vector<std::vector<long>>> parts(t);
  if (t == 1) {
    work(lo, hi, parts[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (unsigned i = 0; i < t; ++i) {
      const long a = lo + span * i / t, b = lo + span * (i + 1) / t - 1;
      pool.emplace_back([&, i, a, b] {
        try {
          work(a, b, parts[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<Cyclotomic> pts;
  for (auto& part : parts)
    for (auto& coeffs : part) pts.emplace_back(spec.order, to_integers(coeffs), 1);
  return FinitePointSet(spec.order, spec.translation, std::move(pts));
}

// ------------------------------------------------------------ PV numbers

RealCyclotomic pv_search(int n, int coeff_bound) {
  if (coeff_bound < 1) throw InvalidArgument("coefficient bound must be at least 1");
  const auto& field = cyclotomic_field(n);
  const int d = field.real_degree();
  const auto& ks = field.embedding_exponents();
  // conj[j][i] = sigma_j(c^i)
  std::vector<std::vector<double>> conj(d, std::vector<double>(d));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) conj[j][i] = std::pow(2 * std::cos(2 * kPi * ks[j] / n), i);

  std::vector<long> c(d, -coeff_bound);
  std::vector<long> best;
  double best_s1 = 0, best_mod = 0;
  while (true) {
    std::vector<double> s(d, 0.0);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) s[j] += c[i] * conj[j][i];
    bool ok = s[0] > 1 + 1e-9;
    double mod = 0;
    for (int j = 1; ok && j < d; ++j) {
      mod = std::max(mod, std::abs(s[j]));
      ok = std::abs(s[j]) < 1 - 1e-9;
    }
    for (int a = 0; ok && a < d; ++a)
      for (int b = a + 1; ok && b < d; ++b) ok = std::abs(s[a] - s[b]) > 1e-9;
    if (ok && (best.empty() || s[0] < best_s1 - 1e-12 || (std::abs(s[0] - best_s1) <= 1e-12 && mod < best_mod))) {
      best = c;
      best_s1 = s[0];
      best_mod = mod;
    }
    int i = 0;
    while (i < d && c[i] == coeff_bound) c[i++] = -coeff_bound;
    if (i == d) break;
    ++c[i];
  }
  if (best.empty()) throw NotFound("no PV number with coefficients bounded by " + std::to_string(coeff_bound));
  std::vector<Rational> q(best.begin(), best.end());
  return RealCyclotomic(n, std::move(q));
}

// ------------------------------------------------------------ homothety

Cyclotomic HomothetyEmbedding::apply(const Cyclotomic& f, const Cyclotomic& t) const {
  return t + offset + scale.to_cyclotomic() * (f - t);
}

namespace {

Cyclotomic find_anchor(const ModelSetSpec& spec) {
  const Cyclotomic zero(spec.order);
  if (window_margin(spec, star_map(zero, spec)) > spec.guard_band) return zero;
  for (double r = 2; r <= 64; r *= 2) {
    const auto pts = generate(spec, spec.translation.value(), r);
    const Cyclotomic* best = nullptr;
    double best_margin = spec.guard_band;
    for (const auto& z : pts.points) {
      const double m = window_margin(spec, star_map(z, spec));
      if (m > best_margin) {
        best_margin = m;
        best = &z;
      }
    }
    if (best) return *best;
  }
  throw NotFound("no lattice point with star image strictly inside the window");
}

}  // namespace

HomothetyEmbedding embed_homothety(const std::vector<Cyclotomic>& F, const ModelSetSpec& spec) {
  spec.validate();
  if (F.empty()) throw InvalidArgument("cannot embed an empty set");
  const int n = spec.order;
  const Cyclotomic& t = spec.translation;
  std::vector<Cyclotomic> rel;
  Integer l = 1;
  for (const auto& f : F) {
    if (f.order() != n) throw OrderMismatch(f.order(), n);
    rel.push_back(f - t);
    l = lcm(l, rel.back().denominator());
  }

  HomothetyEmbedding h;
  h.denominator_lcm = l;
  const Rational lq(l);
  if (spec.internal_planes() == 0) {
    h.scale = RealCyclotomic(n, lq);
    h.offset = Cyclotomic(n);
    std::vector<Cyclotomic> img;
    for (const auto& g : rel) img.push_back(g * lq);
    h.image = FinitePointSet(n, t, std::move(img));
    return h;
  }

  const RealCyclotomic lambda = pv_search(n);
  const Cyclotomic lambda_c = lambda.to_cyclotomic();
  h.offset = find_anchor(spec);
  std::vector<Cyclotomic> scaled;
  for (const auto& g : rel) scaled.push_back(g * lq);
  RealCyclotomic scale(n, lq);
  for (int k = 0; k <= 256; ++k) {
    bool all_inside = true;
    std::vector<Cyclotomic> img;
    for (const auto& g : scaled) {
      img.push_back(h.offset + g);
      if (classify_point(img.back(), spec) != WindowTest::Inside) {
        all_inside = false;
        break;
      }
    }
    if (all_inside) {
      h.power = k;
      h.scale = scale;
      h.image = FinitePointSet(n, t, std::move(img));
      for (const auto& z : h.image.points)
        if (classify_point(z, spec) != WindowTest::Inside) throw InternalError("homothety image failed re-verification");
      return h;
    }
    for (auto& g : scaled) g = g * lambda_c;
    scale = scale * lambda;
  }
  throw NotFound("no power of the PV number contracts the set into the window");
}

InternalPoint weyl_mean(const FinitePointSet& points, const ModelSetSpec& spec) {
  if (points.empty()) throw InvalidArgument("mean of an empty set");
  if (spec.internal_planes() == 0) throw InvalidArgument("order has no internal space");
  InternalPoint acc(spec.internal_planes(), Planar(0, 0));
  for (const auto& z : points.points) {
    const auto s = star_map(z, spec);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
  }
  for (auto& a : acc) a /= static_cast<double>(points.size());
  return acc;
}

}  // namespace quasitomo
