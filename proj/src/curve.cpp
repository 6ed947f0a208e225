#include "mink/curve.hpp"

#include <algorithm>

namespace mink {

double tlength(const Polygon2& T, const std::vector<Vec2>& cycle) {
  double s = 0.0;
  size_t m = cycle.size();
  for (size_t i = 0; i < m; ++i) s += support(T, cycle[(i + 1) % m] - cycle[i]);
  return s;
}

double tlength(const Polygon2& T, const PolyCurve& curve) { return tlength(T, curve.points); }

std::vector<double> curve_tie_key(const PolyCurve& curve) {
  size_t m = curve.features.size();
  std::vector<double> pos(m);
  for (size_t i = 0; i < m; ++i) pos[i] = curve.features[i].boundary_pos();
  // Smallest rotation of the cyclic sequence; 2-point cycles are unordered.
  std::vector<double> best;
  for (size_t r = 0; r < m; ++r) {
    std::vector<double> cand(m);
    for (size_t i = 0; i < m; ++i) cand[i] = pos[(r + i) % m];
    if (m == 2 && cand[0] > cand[1]) continue;
    if (best.empty() || std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))
      best = cand;
  }
  best.insert(best.begin(), double(m));
  return best;
}

bool tie_key_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

PolyCurve curve_from_features(const Polygon2& K, const std::vector<Feature>& features) {
  PolyCurve c;
  c.features = features;
  c.points.reserve(features.size());
  for (const Feature& f : features) c.points.push_back(K.point_at(f));
  if (c.points.size() >= 3) {
    double s = 0.0;
    for (size_t i = 0; i < c.points.size(); ++i)
      s += cross(c.points[i], c.points[(i + 1) % c.points.size()]);
    c.ccw = s >= 0.0;
  }
  return c;
}

}  // namespace mink
