#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "quasitomo/errors.hpp"
#include "quasitomo/model_set.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace quasitomo;
using quasitomo::testing::brute_force;
using quasitomo::testing::cz;
using quasitomo::testing::oracle_bound;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("presets are valid") {
  for (const auto& name : preset_names()) CHECK_NOTHROW(preset_spec(name).validate());
  CHECK(preset_spec("ab").symmetry_order() == 8);
  CHECK(preset_spec("ttt").symmetry_order() == 10);
  CHECK(preset_spec("triangle").symmetry_order() == 6);
  CHECK(preset_spec("ab").star_exponents == std::vector<int>{3});
  CHECK(preset_spec("ttt").star_exponents == std::vector<int>{2});
  CHECK(preset_spec("shield").star_exponents == std::vector<int>{5});
  CHECK_THROWS_AS(preset_spec("penrose"), InvalidArgument);

  auto bad = preset_spec("ab");
  bad.star_exponents = {5};  // 5 = -3 mod 8, fine
  CHECK_NOTHROW(bad.validate());
  bad.star_exponents = {7};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = preset_spec("ab");
  std::reverse(bad.window[0].begin(), bad.window[0].end());
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("star_map examples") {
  const auto ab = preset_spec("ab");
  auto s = star_map(Cyclotomic(8, Rational(1)), ab);
  REQUIRE(s.size() == 1);
  CHECK(std::abs(s[0] - Planar(1, 0)) < 1e-12);
  s = star_map(Cyclotomic::zeta(8), ab);
  CHECK(std::abs(s[0] - std::polar(1.0, 3 * kPi / 4)) < 1e-12);
  s = star_map(Cyclotomic::zeta(5), preset_spec("ttt"));
  CHECK(std::abs(s[0] - std::polar(1.0, 4 * kPi / 5)) < 1e-12);
  CHECK(star_map(Cyclotomic::zeta(4), preset_spec("square")).empty());
  CHECK_THROWS_AS(star_map(Cyclotomic::zeta(5), ab), OrderMismatch);
}

TEST_CASE("window_contains examples") {
  const auto ab = preset_spec("ab");
  CHECK(window_contains(ab, {Planar(0, 0)}) == WindowTest::Inside);
  CHECK(window_contains(ab, {Planar(10, 0)}) == WindowTest::Outside);
  const double inradius = 1 / (2 * std::tan(kPi / 8));
  CHECK(std::abs(inradius - 1.2071) < 1e-4);
  CHECK(window_contains(ab, {Planar(inradius, 0)}) == WindowTest::BoundaryBand);
  CHECK(window_contains(ab, {Planar(inradius - 1e-6, 0)}) == WindowTest::Inside);
  CHECK(window_contains(ab, {Planar(inradius + 1e-6, 0)}) == WindowTest::Outside);
  CHECK_THROWS_AS(window_contains(ab, {}), InvalidArgument);
}

TEST_CASE("generate examples") {
  const auto ab = preset_spec("ab");
  const auto small = generate(ab, 0, 1.1);
  CHECK(small.contains(Cyclotomic(8)));
  CHECK(small.contains(Cyclotomic(8, Rational(1))));
  CHECK(small.contains(Cyclotomic::zeta(8)));
  const auto one_zeta = cz(8, {1, 1});
  CHECK_FALSE(small.contains(one_zeta));
  CHECK(std::abs(std::abs(star_map(one_zeta, ab)[0]) - std::sqrt(2 - std::sqrt(2))) < 1e-12);
  CHECK(classify_point(one_zeta, ab) == WindowTest::Inside);
  CHECK(generate(ab, 0, 2.5).contains(one_zeta));
  CHECK(classify_point(Cyclotomic(8, Rational(2)), ab) == WindowTest::Outside);
  CHECK_FALSE(generate(ab, 0, 3).contains(Cyclotomic(8, Rational(2))));

  const auto sq = generate(preset_spec("square"), 0, 1.5);
  CHECK(sq.size() == 9);
  for (long a : {-1, 0, 1})
    for (long b : {-1, 0, 1}) CHECK(sq.contains(cz(4, {a, b})));

  CHECK_THROWS_AS(generate(ab, 0, 0), InvalidArgument);
}

TEST_CASE("non-generic windows are reported") {
  auto ttt = preset_spec("ttt");
  ttt.window_shift = {Planar(0, 0)};
  CHECK_THROWS_AS(generate(ttt, 0, 8), NonGenericConfiguration);
  ttt.closed_window = true;
  CHECK_NOTHROW(generate(ttt, 0, 8));
  auto shield = preset_spec("shield");
  shield.window_shift = {Planar(0, 0)};
  CHECK_THROWS_AS(generate(shield, 0, 8), NonGenericConfiguration);
}

TEST_CASE("generate matches a brute-force cube filter for radius <= 6") {
  for (const auto& name : preset_names()) {
    const auto spec = preset_spec(name);
    for (double r : {1.0, 2.5, 4.0, 6.0}) {
      const long b = oracle_bound(spec, r);
      const auto lib = generate(spec, 0, r);
      CAPTURE(name);
      CAPTURE(r);
      CHECK(lib.points == brute_force(spec, 0, r, b));
    }
  }
  // off-centre disk and a translated set
  auto ab = preset_spec("ab");
  ab.translation = Cyclotomic(8, Rational(1, 3)) + Cyclotomic::zeta(8) * Rational(1, 5);
  ab.window_shift = {Planar(0.1, -0.05)};
  const Planar c(1.5, -0.75);
  CHECK(generate(ab, c, 3.0).points == brute_force(ab, c, 3.0, oracle_bound(ab, 6.0)));
}

TEST_CASE("threaded generation is deterministic") {
  const auto spec = preset_spec("shield");
  CHECK(generate(spec, 0, 8, 1) == generate(spec, 0, 8, 4));
}

TEST_CASE("star map is additive") {
  std::mt19937 rng(5);
  const auto spec = preset_spec("ttt");
  for (int i = 0; i < 50; ++i) {
    const auto z = quasitomo::testing::random_cyclotomic(rng, 5, 10);
    const auto w = quasitomo::testing::random_cyclotomic(rng, 5, 10);
    const auto lhs = star_map(z + w, spec), a = star_map(z, spec), b = star_map(w, spec);
    CHECK(std::abs(lhs[0] - a[0] - b[0]) < 1e-9);
  }
}

TEST_CASE("generated sets have weak N-fold symmetry") {
  for (const char* name : {"ab", "square", "triangle"}) {
    const auto spec = preset_spec(name);
    const auto pts = generate(spec, 0, 10);
    const Cyclotomic rot = spec.order % 2 ? -Cyclotomic::zeta(spec.order) : Cyclotomic::zeta(spec.order);
    std::vector<Cyclotomic> rotated;
    for (const auto& z : pts.points) rotated.push_back(z * rot);
    CHECK(FinitePointSet(spec.order, rotated) == pts);
  }
  // shifted windows: compare annulus counts only
  const auto ttt = preset_spec("ttt");
  const auto pts = generate(ttt, 0, 12);
  std::vector<int> a(12), b(12);
  const Planar rot = std::polar(1.0, 2 * kPi / 10);
  for (const auto& z : pts.points) {
    const double r = std::abs(z.value());
    a[static_cast<int>(r)]++;
    b[static_cast<int>(std::abs(z.value() * rot))]++;
  }
  CHECK(a == b);
}

TEST_CASE("pv_search examples") {
  const auto l8 = pv_search(8);
  CHECK(l8 == RealCyclotomic(8, Rational(1)) + RealCyclotomic::generator(8));
  CHECK(std::abs(l8.embed(2) - (1 - std::sqrt(2.0))) < 1e-12);
  CHECK(field_norm_real(l8) == -1);

  const auto l5 = pv_search(5);
  CHECK(std::abs(l5.value() - std::numbers::phi) < 1e-12);
  CHECK(std::abs(l5.embed(2) + 1 / std::numbers::phi) < 1e-12);
  CHECK(abs(field_norm_real(l5)) == 1);

  const auto l12 = pv_search(12);
  CHECK(std::abs(l12.value() - (1 + std::sqrt(3.0))) < 1e-12);
  CHECK(field_norm_real(l12) == -2);

  for (int n : {7, 9, 11, 15, 16, 20}) {
    const auto l = pv_search(n);
    CHECK(l.value() > 1);
    for (int j = 2; j <= cyclotomic_field(n).real_degree(); ++j) CHECK(std::abs(l.embed(j)) < 1 - 1e-9);
    const Rational norm = field_norm_real(l);
    CHECK(norm != 0);
    CHECK(norm.get_den() == 1);
  }
  CHECK_THROWS_AS(pv_search(8, 0), InvalidArgument);
}

TEST_CASE("embed_homothety") {
  const auto sq = preset_spec("square");
  const auto h = embed_homothety({Cyclotomic(4, Rational(1, 2)), Cyclotomic::zeta(4) * Rational(1, 3)}, sq);
  CHECK(h.power == 0);
  CHECK(h.scale == RealCyclotomic(4, Rational(6)));
  CHECK(h.offset.is_zero());
  CHECK(h.image.contains(Cyclotomic(4, Rational(3))));
  CHECK(h.image.contains(Cyclotomic::zeta(4) * Rational(2)));

  const auto ab = preset_spec("ab");
  const auto h2 = embed_homothety({Cyclotomic(8), Cyclotomic(8, Rational(1, 2))}, ab);
  CHECK(h2.image.size() == 2);
  for (const auto& z : h2.image.points) CHECK(classify_point(z, ab) == WindowTest::Inside);
  CHECK(h2.offset.is_zero());

  const auto h3 = embed_homothety({Cyclotomic(8)}, ab);
  CHECK(h3.offset.is_zero());
  CHECK(h3.image.points == std::vector<Cyclotomic>{Cyclotomic(8)});

  // a shifted window that excludes the origin forces a non-trivial anchor
  auto shifted = ab;
  shifted.window_shift = {Planar(2.0, 0.3)};
  const std::vector<Cyclotomic> F{Cyclotomic(8), Cyclotomic::zeta(8, 2) * Rational(3, 4), cz(8, {2, 0, 1})};
  const auto h4 = embed_homothety(F, shifted);
  CHECK_FALSE(h4.offset.is_zero());
  for (const auto& f : F) {
    const auto img = h4.apply(f, shifted.translation);
    CHECK(h4.image.contains(img));
    CHECK(classify_point(img, shifted) == WindowTest::Inside);
  }
  CHECK_THROWS_AS(embed_homothety({}, ab), InvalidArgument);
}

TEST_CASE("weyl_mean") {
  const auto ab = preset_spec("ab");
  CHECK(std::abs(weyl_mean(FinitePointSet(8, {Cyclotomic(8)}), ab)[0]) < 1e-15);
  const auto m = weyl_mean(generate(ab, 0, 40), ab);
  CHECK(std::abs(m[0]) < 0.05);
  auto shifted = ab;
  shifted.window_shift = {Planar(0.3, 0.2)};
  const auto m2 = weyl_mean(generate(shifted, 0, 40), shifted);
  CHECK(std::abs(m2[0] - Planar(0.3, 0.2)) < 0.05);
  CHECK(std::abs(window_centroid(shifted)[0] - Planar(0.3, 0.2)) < 1e-12);
  CHECK_THROWS_AS(weyl_mean(FinitePointSet(8, {}), ab), InvalidArgument);
  CHECK_THROWS_AS(weyl_mean(FinitePointSet(4, {Cyclotomic(4)}), preset_spec("square")), InvalidArgument);
}
