#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasitomo/cyclotomic.hpp"
#include "quasitomo/model_set.hpp"
#include "quasitomo/valuation.hpp"
#include "quasitomo/xray.hpp"

namespace quasitomo {

/// Sign of Im(conj(a) * b): +1, -1, or 0 exactly when a and b are parallel.
int orientation(const Cyclotomic& a, const Cyclotomic& b);
/// Sign of the turn p -> q -> r.
int orientation(const Cyclotomic& p, const Cyclotomic& q, const Cyclotomic& r);

/// Strictly convex polygon with vertices in K_n, in cyclic order (either sense).
class PolygonInPlane {
 public:
  PolygonInPlane(int n, std::vector<Cyclotomic> vertices);

  int order() const noexcept { return n_; }
  const std::vector<Cyclotomic>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  /// +1 for counter-clockwise vertex order, -1 for clockwise.
  int sense() const noexcept { return sense_; }
  /// Closed containment.
  bool contains(const Cyclotomic& p) const;

  friend bool operator==(const PolygonInPlane&, const PolygonInPlane&) = default;

 private:
  int n_;
  std::vector<Cyclotomic> vertices_;
  int sense_ = 1;
};

/// m in {3,4,6}, or m | n, or m = 2d with d an odd divisor of n.
bool affinely_regular_exists(int m, int n);

/// An affinely regular m-gon with vertices in O_n. Throws NotFound when none exists.
PolygonInPlane affine_regular_witness(int m, int n);

/// Cross ratio of slopes of four pairwise non-parallel directions, taken in
/// the given order.
RealCyclotomic cross_ratio(const Direction& u1, const Direction& u2, const Direction& u3, const Direction& u4);
/// Cross ratio of four directions after sorting them by angle.
RealCyclotomic cross_ratio_sorted(std::vector<Direction> U);

/// Affinely regular hexagon whose edges are parallel to three given
/// pairwise non-parallel elements of O_n; it is a U-polygon for them.
PolygonInPlane build_u_polygon_3(const Cyclotomic& o1, const Cyclotomic& o2, const Cyclotomic& o3);

/// Every line through a vertex parallel to a direction of U meets a second vertex.
bool is_u_polygon(const PolygonInPlane& P, const std::vector<Direction>& U);

/// The six directions and the dodecagon that is a U-polygon for them.
std::pair<std::vector<Direction>, PolygonInPlane> dodecagon_family(int n);
/// The four directions and the octagon that is a U-polygon for them.
std::pair<std::vector<Direction>, PolygonInPlane> octagon_family(int n);

/// Vertices of the convex hull in counter-clockwise order.
std::vector<Cyclotomic> convex_hull(std::vector<Cyclotomic> points);

/// F equals conv(F) intersected with the realized model set.
bool is_convex_in(const std::vector<Cyclotomic>& F, const FinitePointSet& lambda);

/// Two convex subsets of lambda with equal X-rays in U, built from the
/// alternating vertex classes of P and the points of lambda inside P.
std::pair<FinitePointSet, FinitePointSet> u_polygon_switch_sets(const PolygonInPlane& P, const std::vector<Direction>& U,
                                                                const FinitePointSet& lambda);

enum class Verdict { Determined, NotDetermined, Inconclusive };
enum class CertificateReason {
  CardinalityLE3,
  UPolygonWitness,
  N1Excluded,
  N2Excluded,
  TwoPrimeExcluded,
  Card7InU4Q,
  CrossRatioInExclusionSet
};

std::string to_string(Verdict v);
std::string to_string(CertificateReason r);

struct DeterminationCertificate {
  std::vector<Direction> directions;
  Verdict verdict = Verdict::Inconclusive;
  CertificateReason reason = CertificateReason::CrossRatioInExclusionSet;
  std::optional<PolygonInPlane> witness;
  /// The four directions (sorted by angle) whose cross ratio decided, if any.
  std::vector<Direction> deciding_quadruple;
  std::optional<CrossRatioVerdict> cross_ratio;
};

/// Whether convex subsets of every model set over O_n are determined by
/// X-rays in U.
DeterminationCertificate certify_convex_determination(const std::vector<Direction>& U, int n);

}  // namespace quasitomo
