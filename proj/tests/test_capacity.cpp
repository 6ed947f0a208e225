#include <cmath>

#include "doctest.h"
#include "mink/capacity.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace mink;
using testutil::kPi;

TEST_CASE("capacity is conformal in either factor") { CHECK(props::conformality(100) == 0); }

TEST_CASE("capacity is translation invariant") {
  CHECK(props::translation_invariance(100) == 0);
}

TEST_CASE("capacity is symmetric in the two factors") {
  CHECK(props::swap_symmetry(100) == 0);
}

TEST_CASE("capacity is monotone under inclusion of K") {
  CHECK(props::monotonicity(100) == 0);
}

TEST_CASE("capacity is invariant under simultaneous rotation") {
  Polygon2 K = testutil::pentagon_k(), T = testutil::pentagon_t();
  double c = ehz_capacity(K, T);
  double fifth = 2.0 * kPi / 5.0;
  CHECK(std::abs(ehz_capacity(rotated(K, fifth), rotated(T, fifth)) - c) <= 1e-9);

  Rng rng(41, 7);
  for (int i = 0; i < 100; ++i) {
    Polygon2 A = testutil::random_convex_sized(rng, 5, 8);
    Polygon2 B = testutil::random_convex_sized(rng, 5, 8);
    double th = rng.uniform(0.0, 2.0 * kPi);
    double c0 = ehz_capacity(A, B);
    CHECK(std::abs(ehz_capacity(rotated(A, th), rotated(B, th)) - c0) <=
          1e-9 * std::max(1.0, c0));
  }
}

TEST_CASE("exact minimizers satisfy the billiard law on random pairs") {
  Rng rng(41, 8);
  for (int i = 0; i < 30; ++i) {
    Polygon2 K = testutil::random_convex_sized(rng, 5, 8);
    Polygon2 T = testutil::random_convex_sized(rng, 5, 8);
    CapacityResult r = min_curve_exact(K, T);
    CHECK(r.certified);
    BilliardCheck chk = verify_billiard(K, T, r.minimizer, 1e-8);
    CHECK(chk.certified);
    CHECK(chk.momenta.size() == r.minimizer.points.size());
  }
}

TEST_CASE("billiard verification rejects a translatable cycle") {
  Polygon2 K = testutil::pentagon_k(), T = testutil::pentagon_t();
  // A vertex and a nearby point on an incident edge: translatable, so the
  // momentum chain cannot close.
  PolyCurve c = curve_from_features(
      K, {Feature::at_vertex(0), Feature::on_edge(0, 0.5)});
  BilliardCheck chk = verify_billiard(K, T, c, 1e-8);
  CHECK_FALSE(chk.certified);
  CHECK_FALSE(chk.reason.empty());
}

TEST_CASE("interpolation sweep brackets and bisects the unit ratio") {
  Polygon2 S = testutil::square_pm1();
  Polygon2 K = testutil::pentagon_k(), T = testutil::pentagon_t();
  SweepResult r = interpolation_sweep(S, S, K, T, 10);
  REQUIRE(r.rows.size() == 11);
  CHECK(r.rows.front().lambda == 0.0);
  CHECK(r.rows.back().lambda == 1.0);
  CHECK(r.rows.front().sys == doctest::Approx(testutil::kPentSys).epsilon(1e-9));
  CHECK(r.rows.back().sys == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(r.root_sys - 1.0) <= 1e-6);
  CHECK(r.root_lambda > 0.0);
  CHECK(r.root_lambda < 1.0);
  CHECK((r.bracket_lo_sys - 1.0) * (r.bracket_hi_sys - 1.0) <= 0.0);
  CHECK(r.bracket_lo <= r.root_lambda);
  CHECK(r.root_lambda <= r.bracket_hi);
}

TEST_CASE("interpolation sweep requires ratios straddling one") {
  Polygon2 S = testutil::square_pm1();
  Polygon2 K = testutil::pentagon_k(), T = testutil::pentagon_t();
  CHECK_THROWS_AS(interpolation_sweep(K, T, S, S, 8), NoCrossing);
  CHECK_THROWS_AS(interpolation_sweep(S, S, S, S, 8), NoCrossing);
}
