#pragma once

#include <string>
#include <vector>

#include "quasitomo/cyclotomic.hpp"
#include "quasitomo/model_set.hpp"
#include "quasitomo/xray.hpp"

namespace quasitomo {

struct SecondDirectionResult {
  /// 0 < epsilon <= min(1/2, 1/(4r)).
  Rational epsilon;
  /// Radius of a ball holding the internal-half coordinates of the grid after
  /// multiplication by conj(o).
  double r = 0;
  Direction direction;
  /// o' with direction parallel to o' / conj(o).
  Cyclotomic auxiliary;
  /// Finite part of the grid on which the contract was checked, sorted.
  std::vector<Cyclotomic> candidates;
  std::string note;
};

/// Lattice points f + mu * o with f in F, mu in the real order with split
/// coordinates in [-extent, extent]. Every such point lies on a support line
/// of the X-ray of F in direction u.
std::vector<Cyclotomic> line_candidates(const FinitePointSet& F, const Direction& u, int extent = 1);

/// Largest number of points of G on one line parallel to u.
std::size_t max_points_per_line(const std::vector<Cyclotomic>& G, const Direction& u);

/// A direction u' such that the X-rays of F in u and u' determine F among
/// finite subsets of O_n. Works on the lattice coordinates of F.
SecondDirectionResult second_direction(const FinitePointSet& F, const Direction& u, int extent = 1);

/// A direction u' that works for every subset of the model set with diameter
/// below R, derived from R and the window size alone.
SecondDirectionResult bounded_second_direction(const ModelSetSpec& spec, double R, const Direction& u);

}  // namespace quasitomo
