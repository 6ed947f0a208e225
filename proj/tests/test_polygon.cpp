#include <cmath>

#include "doctest.h"
#include "mink/polygon.hpp"
#include "mink/rng.hpp"
#include "support.hpp"

using namespace mink;
using testutil::kPi;

TEST_CASE("construction canonicalizes order, start vertex, collinear runs") {
  // Clockwise square with a redundant point on the bottom edge.
  Polygon2 P({{1, 1}, {-1, 1}, {-1, -1}, {0, -1}, {1, -1}});
  CHECK(P.size() == 4);
  CHECK(P.vertex(0).x == -1.0);
  CHECK(P.vertex(0).y == -1.0);
  double a2 = 0.0;
  for (int i = 0; i < P.size(); ++i) a2 += cross(P.vertex(i), P.vertex(i + 1));
  CHECK(a2 > 0.0);  // counter-clockwise after canonicalization
  CHECK(P.vertex(1).x == 1.0);

  CHECK_THROWS_AS(Polygon2({{0, 0}, {1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(Polygon2({{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}}), InvalidArgument);
  CHECK_THROWS_AS(Polygon2({{0, 0}, {1, 0}, {2, 0}}), InvalidArgument);  // flat
}

TEST_CASE("regular polygons land on the predicted vertices") {
  Polygon2 K = testutil::pentagon_k();
  CHECK(K.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(testutil::has_vertex(K, testutil::pent_v(k), 1e-12));

  Polygon2 T = testutil::pentagon_t();
  for (int k = 0; k < 5; ++k) CHECK(testutil::has_vertex(T, testutil::pent_w(k), 1e-12));
  CHECK(testutil::has_vertex(T, {0, -1}, 1e-12));

  Polygon2 S = regular_polygon(4, std::sqrt(2.0), kPi / 4.0);
  CHECK(testutil::same_polygon(S, testutil::square_pm1(), 1e-12));

  CHECK_THROWS_AS(regular_polygon(2, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(regular_polygon(5, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(regular_polygon(5, -1.0, 0.0), InvalidArgument);
}

TEST_CASE("support function: examples, homogeneity, subadditivity") {
  Polygon2 K = testutil::pentagon_k(), T = testutil::pentagon_t();
  CHECK(support(T, {0, 0}) == 0.0);
  CHECK(support(T, {1, 0}) == doctest::Approx(std::cos(kPi / 10.0)).epsilon(1e-12));
  CHECK(support(K, {1, 0}) == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(7, 10);
  for (int i = 0; i < 200; ++i) {
    Polygon2 P = testutil::random_convex_sized(rng, 4, 9);
    Vec2 u{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Vec2 v{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    double lam = rng.uniform(0.0, 3.0);
    CHECK(support(P, lam * u) ==
          doctest::Approx(lam * support(P, u)).epsilon(1e-12).scale(1.0));
    CHECK(support(P, u + v) <= support(P, u) + support(P, v) + 1e-12);
  }
}

TEST_CASE("gauge: examples and membership") {
  Polygon2 K = testutil::pentagon_k();
  CHECK(gauge(K, {0, 0}) == 0.0);
  CHECK(gauge(K, testutil::pent_v(2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gauge(K, 0.5 * testutil::pent_v(0)) == doctest::Approx(0.5).epsilon(1e-12));

  Rng rng(7, 11);
  for (int i = 0; i < 50; ++i) {
    Polygon2 P = testutil::random_convex_sized(rng, 4, 8);
    Vec2 x{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    double g = gauge(P, x);
    double lam = rng.uniform(0.0, 2.0);
    CHECK(gauge(P, lam * x) == doctest::Approx(lam * g).epsilon(1e-12).scale(1.0));
  }
  Polygon2 off = translated(testutil::square_pm1(), {5, 0});
  CHECK_THROWS_AS(gauge(off, {5, 0.5}), InvalidBody);
}

TEST_CASE("polar duality: cube/cross pair, pentagon, bipolar, 1000 directions") {
  Polygon2 S = testutil::square_pm1();
  CHECK(testutil::same_polygon(polar(S), testutil::cross_pm1(), 1e-12));

  Polygon2 K = testutil::pentagon_k();
  Polygon2 Kp = polar(K);
  double rp = 1.0 / std::cos(kPi / 5.0);
  CHECK(Kp.size() == 5);
  for (int k = 0; k < 5; ++k) {
    double a = kPi / 5.0 + 2.0 * kPi * k / 5.0;
    CHECK(testutil::has_vertex(Kp, {rp * std::cos(a), rp * std::sin(a)}, 1e-12));
  }
  CHECK(area(Kp) ==
        doctest::Approx(testutil::kPentArea / std::pow(std::cos(kPi / 5.0), 2)).epsilon(1e-12));
  CHECK(testutil::same_polygon(polar(Kp), K, 1e-9));

  Rng rng(7, 12);
  for (int i = 0; i < 1000; ++i) {
    double a = rng.uniform(0.0, 2.0 * kPi);
    double r = rng.uniform(0.05, 4.0);
    Vec2 u{r * std::cos(a), r * std::sin(a)};
    CHECK(std::abs(support(K, u) - gauge(Kp, u)) <= 1e-9 * norm(u));
  }
  CHECK_THROWS_AS(polar(translated(S, {5, 0})), InvalidBody);
}

TEST_CASE("normal cones at edges and vertices") {
  Polygon2 K = testutil::pentagon_k();
  Vec2 mid = 0.5 * (testutil::pent_v(0) + testutil::pent_v(1));
  Cone c = normal_cone(K, mid);
  REQUIRE(c.rays.size() == 1);
  CHECK(c.rays[0].x == doctest::Approx(std::cos(kPi / 5.0)).epsilon(1e-12));
  CHECK(c.rays[0].y == doctest::Approx(std::sin(kPi / 5.0)).epsilon(1e-12));

  Cone v = normal_cone(K, {1, 0});
  REQUIRE(v.rays.size() == 2);
  // Incident edge normals in counter-clockwise order: -pi/5 then pi/5.
  CHECK(v.rays[0].y == doctest::Approx(-std::sin(kPi / 5.0)).epsilon(1e-12));
  CHECK(v.rays[1].y == doctest::Approx(std::sin(kPi / 5.0)).epsilon(1e-12));
  CHECK(cross(v.rays[0], v.rays[1]) > 0.0);

  Cone sq = normal_cone(testutil::square_pm1(), {1, 1});
  REQUIRE(sq.rays.size() == 2);
  CHECK(dist(sq.rays[0], {1, 0}) <= 1e-12);
  CHECK(dist(sq.rays[1], {0, 1}) <= 1e-12);

  CHECK_THROWS_AS(normal_cone(K, {0, 0}), NotOnBoundary);
  CHECK_THROWS_AS(normal_cone(K, {5, 5}), NotOnBoundary);
}

TEST_CASE("boundary location snaps to features") {
  Polygon2 S = testutil::square_pm1();
  auto f = locate_boundary(S, {0.25, -1}, S.tol());
  REQUIRE(f.has_value());
  CHECK(f->kind == Feature::Kind::edge);
  CHECK(S.point_at(*f).x == doctest::Approx(0.25).epsilon(1e-12));
  auto v = locate_boundary(S, {-1, -1 + 1e-12}, S.tol());
  REQUIRE(v.has_value());
  CHECK(v->kind == Feature::Kind::vertex);
  CHECK_FALSE(locate_boundary(S, {0, 0}, S.tol()).has_value());
  CHECK_FALSE(locate_boundary(S, {3, 3}, S.tol()).has_value());
}

TEST_CASE("translatability: examples, subsets, rotation equivariance") {
  Polygon2 K = testutil::pentagon_k();
  auto one = translatable_into_interior(K, {{0, 0}});
  CHECK(one.translatable);
  CHECK(gauge(K, one.witness) < 1.0);  // witness shifts the set inside

  CHECK_FALSE(translatable_into_interior(K, {testutil::pent_v(0), testutil::pent_v(2)})
                  .translatable);
  CHECK(translatable_into_interior(K, {testutil::pent_v(0), 0.5 * testutil::pent_v(2)})
            .translatable);

  Rng rng(7, 13);
  for (int i = 0; i < 100; ++i) {
    Polygon2 P = testutil::random_convex_sized(rng, 4, 8);
    std::vector<Vec2> pts;
    int n = 2 + rng.uniform_int(4);
    for (int j = 0; j < n; ++j) {
      double a = rng.uniform(0.0, 2.0 * kPi);
      double r = rng.uniform(0.2, 1.6);
      pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    auto whole = translatable_into_interior(P, pts);
    if (whole.translatable) {
      std::vector<Vec2> sub(pts.begin(), pts.begin() + 1 + rng.uniform_int(int(pts.size())));
      CHECK(translatable_into_interior(P, sub).translatable);
    }
    double theta = rng.uniform(0.0, 2.0 * kPi);
    std::vector<Vec2> rpts;
    for (const Vec2& q : pts) rpts.push_back(rotated(q, theta));
    CHECK(translatable_into_interior(rotated(P, theta), rpts).translatable ==
          whole.translatable);
  }
}

TEST_CASE("affine transforms act vertexwise") {
  Rng rng(7, 14);
  for (int i = 0; i < 40; ++i) {
    Polygon2 P = testutil::random_convex_sized(rng, 4, 8);
    double al = rng.uniform(0.3, 2.5);
    Polygon2 Ps = scaled(P, al);
    for (int k = 0; k < P.size(); ++k)
      CHECK(testutil::has_vertex(Ps, al * P.vertex(k), 1e-12));
    double th = rng.uniform(0.0, 2.0 * kPi);
    Polygon2 Pr = rotated(P, th);
    for (int k = 0; k < P.size(); ++k)
      CHECK(testutil::has_vertex(Pr, rotated(P.vertex(k), th), 1e-9));
    Vec2 t{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    Polygon2 Pt = translated(P, t);
    for (int k = 0; k < P.size(); ++k)
      CHECK(testutil::has_vertex(Pt, P.vertex(k) + t, 1e-12));
    CHECK(area(Ps) == doctest::Approx(al * al * area(P)).epsilon(1e-12));
    CHECK(area(Pr) == doctest::Approx(area(P)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(scaled(testutil::square_pm1(), 0.0), InvalidArgument);
  CHECK_THROWS_AS(scaled(testutil::square_pm1(), -2.0), InvalidArgument);
}

TEST_CASE("minkowski combination endpoints, self-combination, octagon area") {
  Polygon2 K = testutil::pentagon_k();
  CHECK(testutil::same_polygon(minkowski_combine(K, K, 0.5), K, 1e-12));

  Polygon2 S = testutil::square_pm1(), C = testutil::cross_pm1();
  CHECK(testutil::same_polygon(minkowski_combine(S, C, 1.0), S, 1e-12));
  CHECK(testutil::same_polygon(minkowski_combine(S, C, 0.0), C, 1e-12));

  Polygon2 oct = minkowski_combine(S, C, 0.5);
  CHECK(oct.size() == 8);
  CHECK(area(oct) == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("areas of the reference bodies") {
  CHECK(area(testutil::pentagon_k()) == doctest::Approx(testutil::kPentArea).epsilon(1e-12));
  CHECK(area(testutil::pentagon_t()) == doctest::Approx(testutil::kPentArea).epsilon(1e-12));
  CHECK(area(testutil::square_pm1()) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(area(testutil::cross_pm1()) == doctest::Approx(2.0).epsilon(1e-12));
}
