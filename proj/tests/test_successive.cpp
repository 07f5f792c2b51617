#include <map>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "oracles.hpp"
#include "quasitomo/errors.hpp"
#include "quasitomo/successive.hpp"
#include "test_support.hpp"

using namespace quasitomo;
using quasitomo::testing::cz;

namespace {

void check_bounds(const SecondDirectionResult& res) {
  CHECK(res.epsilon > 0);
  CHECK(res.epsilon <= Rational(1, 2));
  if (res.r > 0) CHECK(res.epsilon.get_d() <= 1 / (4 * res.r) + 1e-15);
}

}  // namespace

TEST_CASE("line_candidates stay on the support lines") {
  const Direction u(8, {1, 1});
  const FinitePointSet F(8, {Cyclotomic(8), cz(8, {2, 0, -1})});
  const auto G = line_candidates(F, u, 1);
  CHECK(G.size() == 18);
  const auto keys = xray(F, u).support();
  for (const auto& g : G) {
    CHECK(g.is_integral());
    CHECK(std::find(keys.begin(), keys.end(), line_key(g, u)) != keys.end());
  }
  CHECK(line_candidates(F, u, 0) == F.points);
}

TEST_CASE("second_direction on the square lattice") {
  const FinitePointSet F(4, {Cyclotomic(4), cz(4, {1, 1})});
  const Direction u(4, {1});
  const auto res = second_direction(F, u);
  check_bounds(res);
  CHECK_FALSE(res.direction.parallel_to(u));
  const std::vector<Cyclotomic> G{Cyclotomic(4), cz(4, {1}), cz(4, {0, 1}), cz(4, {1, 1})};
  std::set<Cyclotomic> keys;
  for (const auto& g : G) keys.insert(line_key(g, res.direction));
  CHECK(keys.size() == G.size());
  CHECK(max_points_per_line(res.candidates, res.direction) == 1);
  CHECK(testing::sets_with_same_xrays(G, F.points, u, res.direction).size() == 1);
}

TEST_CASE("second_direction on a single point") {
  const auto res = second_direction(FinitePointSet(8, {Cyclotomic(8)}), Direction(8, {1}));
  CHECK(res.epsilon == Rational(1, 2));
  CHECK(res.auxiliary == cz(8, {-1, 2}));
  CHECK(max_points_per_line(res.candidates, res.direction) == 1);
}

TEST_CASE("second_direction edge cases") {
  const auto e = second_direction(FinitePointSet(8, {}), Direction(8, {1}));
  CHECK(e.epsilon == Rational(1, 2));
  CHECK_FALSE(e.note.empty());
  FinitePointSet half(8, {Cyclotomic(8)});
  half.points[0] = Cyclotomic(8, Rational(1, 2));
  CHECK_THROWS_AS(second_direction(half, Direction(8, {1})), InvalidArgument);
  CHECK_THROWS_AS(second_direction(FinitePointSet(8, {}), Direction(4, {1})), OrderMismatch);
  const FinitePointSet shifted(8, Cyclotomic(8, Rational(1, 3)), {Cyclotomic(8), Cyclotomic::zeta(8)});
  CHECK_FALSE(second_direction(shifted, Direction(8, {1})).note.empty());
}

TEST_CASE("second_direction on random subsets of model sets") {
  std::mt19937 rng(29);
  for (const char* name : {"ab", "shield", "ttt", "square", "triangle"}) {
    const auto spec = preset_spec(name);
    const int n = spec.order;
    const auto lam = generate(spec, {0, 0}, 8);
    std::uniform_int_distribution<std::size_t> pick(0, lam.size() - 1);
    for (int trial = 0; trial < 8; ++trial) {
      std::set<Cyclotomic> s;
      while (s.size() < 6) s.insert(lam.points[pick(rng)]);
      const FinitePointSet F(n, {s.begin(), s.end()});
      for (const auto& u : {Direction(n, {1}), Direction(n, {1, 1}), Direction(n, {0, 2, 1})}) {
        const auto res = second_direction(F, u);
        check_bounds(res);
        CHECK(max_points_per_line(res.candidates, res.direction) == 1);
        CHECK(are_parallel(res.direction.rep(), res.auxiliary / u.rep().conj()));

        std::vector<Cyclotomic> S = F.points;
        for (const auto& g : res.candidates)
          if (S.size() < 14 && !F.contains(g)) S.push_back(g);
        const auto found = testing::sets_with_same_xrays(S, F.points, u, res.direction);
        REQUIRE(found.size() == 1);
        CHECK(found[0] == F.points);
      }
    }
  }
}

TEST_CASE("a first direction alone does not determine") {
  // two points on one u-line can slide together along it
  const Direction u(8, {1});
  const FinitePointSet F(8, {Cyclotomic(8), cz(8, {2})});
  const auto G = line_candidates(F, u, 1);
  std::size_t same_u = 0;
  for (const auto& c : testing::sets_with_same_xrays(G, F.points, u, u)) same_u += c.size() == 2;
  CHECK(same_u > 1);
}

TEST_CASE("bounded_second_direction separates small subsets") {
  std::mt19937 rng(37);
  struct Case {
    const char* preset;
    double R;
  };
  for (const auto& c : {Case{"ab", 5}, Case{"square", 3}, Case{"shield", 4}}) {
    const auto spec = preset_spec(c.preset);
    const int n = spec.order;
    const Direction u(n, {1});
    const auto res = bounded_second_direction(spec, c.R, u);
    check_bounds(res);
    const auto lam = generate(spec, {0, 0}, 12);
    std::map<Cyclotomic, std::vector<Cyclotomic>> on_line;
    for (const auto& z : lam.points) on_line[line_key(z, u)].push_back(z);

    std::vector<std::vector<Cyclotomic>> samples;
    for (int i = 0; i < 100; ++i) samples.push_back(testing::random_small_subset(rng, lam, c.R, 8));
    std::vector<std::tuple<XRaySnapshot, XRaySnapshot, std::vector<Cyclotomic>>> seen;
    for (const auto& F : samples) {
      const auto xu = xray(F, u), xv = xray(F, res.direction);
      for (const auto& [a, b, G] : seen)
        if (a == xu && b == xv) CHECK(G == F);
      seen.emplace_back(xu, xv, F);

      // slide one point along its u-line to another point of lam within the
      // diameter bound; the second X-ray must notice
      for (std::size_t i = 0; i < F.size(); ++i)
        for (const auto& z : on_line[line_key(F[i], u)]) {
          if (std::find(F.begin(), F.end(), z) != F.end()) continue;
          auto G = F;
          G[i] = z;
          double diam = 0;
          for (const auto& a : G)
            for (const auto& b : G) diam = std::max(diam, std::abs((a - b).value()));
          if (diam >= c.R) continue;
          CHECK_FALSE(xray(G, res.direction) == xv);
        }
    }
  }
}

TEST_CASE("bounded_second_direction is monotone in R") {
  const auto spec = preset_spec("ab");
  Rational prev(1, 2);
  for (double R : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto res = bounded_second_direction(spec, R, Direction(8, {1}));
    CHECK(res.epsilon <= prev);
    prev = res.epsilon;
  }
  CHECK_THROWS_AS(bounded_second_direction(spec, 0, Direction(8, {1})), InvalidArgument);
}
