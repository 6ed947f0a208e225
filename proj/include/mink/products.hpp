#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mink/polygon.hpp"

namespace mink {

// Implicit convex body given by a gauge evaluator: a planar polygon, a
// symmetric interval, or a p-combination of children
// (gauge = (sum g_i^p)^(1/p), max for p = infinity).  Bodies are built
// containing the origin, so the bounding box of a combination is the
// product of the children's boxes.
struct Body {
  enum class Kind { polygon, interval, combo };
  Kind kind = Kind::interval;
  int dim = 1;
  double volume = 0.0;
  std::vector<std::pair<double, double>> bbox;  // per-axis [lo, hi]

  std::optional<Polygon2> poly;  // polygon leaf
  double halfwidth = 0.0;        // interval leaf
  double p = 1.0;                // combo exponent, may be infinity
  std::vector<Body> children;
};

Body polygon_body(const Polygon2& P);
Body interval_body(double halfwidth);
Body combo_body(double p, std::vector<Body> children);

double body_gauge(const Body& b, const std::vector<double>& x);

// Vol(X (x)_p Y) = Vol(X) Vol(Y) volume_factor(dim X, dim Y, p).
double volume_factor(int m, int n, double p);

// Ratio multiplicativity for the symplectic 2-product; requires equal
// capacities of the two product bodies.
double sys_product2(double sys_x, double sys_y, double cap_x, double cap_y);
// Same for (X1 (x)_1 X2) x (Y1 (x)_inf Y2).
double sys_product_1_inf(double sys1, double sys2, double cap1, double cap2);

struct KnTn {
  int n = 0;
  Body K;
  Body T;
  double l = 0.0;            // interval halfwidth used for odd n
  double capacity = 0.0;     // common capacity, carried not computed
  bool capacity_asserted = true;
  double predicted_sys = 0.0;
};

// The polytope family K_n = pentagon (x)_1 ... (x)_1 pentagon ((x)_1 interval
// when n is odd) and T_n likewise with (x)_inf and the rotated pentagon.
KnTn construct_KnTn(int n);

// capacity^n / (n! Vol(K) Vol(T)) from the analytic volumes.
double sys_from_volumes(const KnTn& kt);

struct McVolume {
  double estimate = 0.0;
  double ci_halfwidth = 0.0;  // 99% confidence
  double box_volume = 0.0;
  long long hits = 0;
  long long samples = 0;
};

// Hit-or-miss volume estimate over the bounding box; deterministic per seed.
McVolume mc_volume(const Body& b, long long samples, std::uint64_t seed);

}  // namespace mink
