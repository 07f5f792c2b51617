#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "quasitomo/cyclotomic.hpp"

namespace quasitomo {

using Planar = std::complex<double>;
/// One planar component per internal plane.
using InternalPoint = std::vector<Planar>;
/// Convex polygon, vertices in counter-clockwise order.
using ConvexPolygon = std::vector<Planar>;

enum class WindowTest { Inside, Outside, BoundaryBand };

std::string to_string(WindowTest w);

struct ModelSetSpec {
  int order = 4;
  /// Galois exponents of the internal embeddings, one per internal plane.
  std::vector<int> star_exponents;
  /// One convex polygon per internal plane.
  std::vector<ConvexPolygon> window;
  Cyclotomic translation{4};
  /// Window offset tau, one entry per internal plane.
  std::vector<Planar> window_shift;
  double guard_band = 1e-9;
  /// Admit points in the guard band instead of raising NonGenericConfiguration.
  bool closed_window = false;
  /// Preset name, or empty for a custom specification.
  std::string preset;

  int internal_planes() const { return static_cast<int>(star_exponents.size()); }
  /// lcm(n, 2).
  int symmetry_order() const { return order % 2 ? 2 * order : order; }
  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

/// Regular m-gon with the given circumradius whose first vertex sits at angle `rotation`.
ConvexPolygon regular_polygon(int m, double circumradius, double rotation);

/// "square", "triangle", "ab", "ttt" or "shield".
ModelSetSpec preset_spec(std::string_view name);
const std::vector<std::string>& preset_names();

/// Star exponents that complete {1, n-1} to a system of representatives of the
/// units modulo conjugation, preferring the listed preset choices.
std::vector<int> default_star_exponents(int n);

struct FinitePointSet {
  int order = 4;
  Cyclotomic translation{4};
  /// Sorted, distinct elements of O_n; the realized set is translation + points.
  std::vector<Cyclotomic> points;

  FinitePointSet() = default;
  FinitePointSet(int n, std::vector<Cyclotomic> pts);
  FinitePointSet(int n, Cyclotomic t, std::vector<Cyclotomic> pts);

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  bool contains(const Cyclotomic& z) const;
  /// translation + points[i].
  Cyclotomic absolute(std::size_t i) const { return translation + points[i]; }
  std::vector<Cyclotomic> absolute_points() const;

  friend bool operator==(const FinitePointSet&, const FinitePointSet&) = default;
};

InternalPoint star_map(const Cyclotomic& z, const ModelSetSpec& spec);

/// Tests pt - tau against the window.
WindowTest window_contains(const ModelSetSpec& spec, const InternalPoint& pt);

/// Smallest signed distance of pt - tau to the window edges (positive inside).
double window_margin(const ModelSetSpec& spec, const InternalPoint& pt);

/// Centroid of the shifted window, per plane.
InternalPoint window_centroid(const ModelSetSpec& spec);

/// star_map followed by window_contains.
WindowTest classify_point(const Cyclotomic& z, const ModelSetSpec& spec);

/// Rows: real and imaginary parts of the physical embedding followed by those
/// of each internal embedding; columns: the power basis.
std::vector<std::vector<double>> minkowski_matrix(const ModelSetSpec& spec);

/// Per-coefficient inclusive bounds [lo, hi] covering every z whose physical
/// image lies in the disk and whose star image lies in the window box.
std::vector<std::pair<long, long>> coefficient_box(const ModelSetSpec& spec, Planar center, double radius);

/// Lambda_n(t, W) intersected with the closed disk. Throws
/// NonGenericConfiguration when a point in the disk lands in the guard band.
FinitePointSet generate(const ModelSetSpec& spec, Planar center, double radius, unsigned threads = 1);

/// A PV number of full degree in the maximal real order with integer
/// coordinates bounded by coeff_bound; minimal first by sigma_1, then by the
/// largest conjugate modulus. Throws NotFound.
RealCyclotomic pv_search(int n, int coeff_bound = 3);

struct HomothetyEmbedding {
  /// l * lambda^power.
  RealCyclotomic scale;
  /// Lattice point anchoring the image.
  Cyclotomic offset;
  int power = 0;
  Integer denominator_lcm = 1;
  FinitePointSet image;

  /// t + offset + scale * (f - t).
  Cyclotomic apply(const Cyclotomic& f, const Cyclotomic& t) const;
};

/// Maps a finite subset of K_n into the model set by a homothety; every image
/// point is re-verified Inside.
HomothetyEmbedding embed_homothety(const std::vector<Cyclotomic>& F, const ModelSetSpec& spec);

/// Mean star image.
InternalPoint weyl_mean(const FinitePointSet& points, const ModelSetSpec& spec);

}  // namespace quasitomo
