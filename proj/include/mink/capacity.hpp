#pragma once

#include <string>
#include <vector>

#include "mink/curve.hpp"
#include "mink/polygon.hpp"

namespace mink {

struct CapacityResult {
  double value = 0.0;
  PolyCurve minimizer;
  std::vector<Vec2> momenta;  // billiard momenta on the boundary of T; empty if uncertified
  std::string method;         // "exact" or "grid"
  bool certified = false;
};

// Minimal curve length over all 2- and 3-point boundary cycles that cannot be
// translated into the interior, points restricted to the boundary grid with
// the given number of samples per edge (vertices always included).
CapacityResult min_curve_grid(const Polygon2& K, const Polygon2& T, int samples_per_edge);

// Reference implementation of the same search by plain exhaustive
// enumeration; used to validate the pruned search on small grids.
CapacityResult min_curve_grid_naive(const Polygon2& K, const Polygon2& T, int samples_per_edge);

// Exact minimum over the combinatorial classes of 2- and 3-point cycles
// (features of K per point, piecewise-linear objective minimized per class).
CapacityResult min_curve_exact(const Polygon2& K, const Polygon2& T);

double ehz_capacity(const Polygon2& K, const Polygon2& T);
// capacity^2 / (2 area(K) area(T)) for the 4-dimensional product body.
double systolic_ratio(const Polygon2& K, const Polygon2& T);

struct BilliardCheck {
  bool certified = false;
  std::vector<Vec2> momenta;
  std::string reason;   // first violated condition when not certified
  int fail_index = -1;  // bounce index of the violation, -1 if none
};

// Searches for momenta on the boundary of T certifying the billiard law for
// the given cycle on the boundary of K, within tolerance tol.
BilliardCheck verify_billiard(const Polygon2& K, const Polygon2& T, const PolyCurve& curve,
                              double tol);

struct SweepRow {
  double lambda = 0.0;
  double sys = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double root_lambda = 0.0;
  double root_sys = 0.0;
  double bracket_lo = 0.0;  // lambda bracket whose ratios straddle 1
  double bracket_hi = 0.0;
  double bracket_lo_sys = 0.0;
  double bracket_hi_sys = 0.0;
};

// Systolic ratio along the Minkowski interpolation
// (lam L + (1-lam) C) x (lam L_T + (1-lam) C_T), plus the bisected root of
// sys = 1.  Requires sys(L pair) < 1 < sys(C pair).
SweepResult interpolation_sweep(const Polygon2& LK, const Polygon2& LT, const Polygon2& CK,
                                const Polygon2& CT, int steps);

namespace detail {

// Validation hook for the pruned grid search: checks over every pair and
// triple of grid indices that the monotone index windows accept exactly the
// tuples whose normal arcs leave no cyclic gap above pi.  O((size*N)^3),
// meant for small N.
bool grid_windows_consistent(const Polygon2& K, int samples_per_edge);

}  // namespace detail

}  // namespace mink
