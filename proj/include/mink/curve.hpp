#pragma once

#include <vector>

#include "mink/polygon.hpp"

namespace mink {

// Closed polygonal curve with 2 or 3 points on the boundary of a body K,
// stored in traversal order together with the carrying boundary features.
struct PolyCurve {
  std::vector<Vec2> points;
  std::vector<Feature> features;
  bool ccw = true;
};

// Curve length measured by the support function of T:
// sum of support(T, q_{i+1} - q_i) around the closed cycle.
double tlength(const Polygon2& T, const PolyCurve& curve);
double tlength(const Polygon2& T, const std::vector<Vec2>& cycle);

// Deterministic comparison key for equally long minimizers: point count,
// then the cyclically smallest sequence of boundary positions.
std::vector<double> curve_tie_key(const PolyCurve& curve);
bool tie_key_less(const std::vector<double>& a, const std::vector<double>& b);

// Rebuilds a curve from features of K (positions recomputed, orientation set
// from the signed area; 2-point curves are conventionally ccw).
PolyCurve curve_from_features(const Polygon2& K, const std::vector<Feature>& features);

}  // namespace mink
