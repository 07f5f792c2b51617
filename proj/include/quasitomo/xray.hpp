#pragma once

#include <map>
#include <utility>
#include <vector>

#include "quasitomo/cyclotomic.hpp"
#include "quasitomo/model_set.hpp"

namespace quasitomo {

/// Exact test whether a and b are real multiples of each other.
bool are_parallel(const Cyclotomic& a, const Cyclotomic& b);

/// An O_n-direction. The representative is a primitive cyclotomic integer
/// whose angle lies in [0, pi). Equality is parallelism.
class Direction {
 public:
  Direction() = default;
  /// Any nonzero element of K_n; denominators are cleared first.
  explicit Direction(const Cyclotomic& o);
  /// Shorthand for the element with the given power-basis coefficients.
  Direction(int n, std::vector<long> coeffs);

  int order() const noexcept { return rep_.order(); }
  const Cyclotomic& rep() const noexcept { return rep_; }
  /// Angle of the representative in [0, pi); used for ordering only.
  double angle() const;

  bool parallel_to(const Direction& o) const { return are_parallel(rep_, o.rep_); }
  friend bool operator==(const Direction& a, const Direction& b) { return a.parallel_to(b); }

 private:
  Cyclotomic rep_;
};

/// Throws ParallelDirections if two entries are parallel, OrderMismatch on mixed orders.
void require_pairwise_nonparallel(const std::vector<Direction>& U);

/// Sorted by increasing angle; throws ParallelDirections on a parallel pair.
std::vector<Direction> sort_by_angle(std::vector<Direction> U);

/// w - conj(w) with w = z * conj(rep); two points share a line parallel to u
/// iff their keys agree.
Cyclotomic line_key(const Cyclotomic& z, const Direction& u);

struct XRaySnapshot {
  Direction direction;
  std::map<Cyclotomic, long> buckets;

  long total() const;
  /// Keys of the support lines.
  std::vector<Cyclotomic> support() const;

  friend bool operator==(const XRaySnapshot& a, const XRaySnapshot& b) {
    return a.direction.rep() == b.direction.rep() && a.buckets == b.buckets;
  }
};

XRaySnapshot xray(const FinitePointSet& F, const Direction& u);
/// X-ray of a finite subset of K_n given by absolute coordinates.
XRaySnapshot xray(const std::vector<Cyclotomic>& points, const Direction& u);

/// The projection view: support lines without multiplicities.
std::vector<Cyclotomic> projection(const XRaySnapshot& x);

/// The point on both the line with key k1 in direction u1 and the line with
/// key k2 in direction u2.
Cyclotomic intersect_lines(const Cyclotomic& k1, const Direction& u1, const Cyclotomic& k2, const Direction& u2);

/// G_F^U in absolute coordinates, sorted.
std::vector<Cyclotomic> grid(const FinitePointSet& F, const std::vector<Direction>& U);
std::vector<Cyclotomic> grid(const std::vector<Cyclotomic>& points, const std::vector<Direction>& U);

/// |N(alpha_o beta_o' - beta_o alpha_o')| == 1.
bool is_unimodular_pair(const Cyclotomic& o, const Cyclotomic& o2);

/// Two disjoint sets of 2^(k-1) points with equal X-rays in every direction of U.
std::pair<FinitePointSet, FinitePointSet> switching_pair(const std::vector<Direction>& U, int n);

/// Exact centroid of a nonempty finite set.
Cyclotomic centroid(const std::vector<Cyclotomic>& points);

}  // namespace quasitomo
