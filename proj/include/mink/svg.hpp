#pragma once

#include <string>
#include <vector>

#include "mink/curve.hpp"
#include "mink/flow.hpp"
#include "mink/polygon.hpp"

namespace mink {

// Minimal SVG documents; every drawn element is a <path>, ordering is
// deterministic, so consumers can count paths per figure kind.

// K and T side by side: 2 paths.
std::string svg_product_pair(const Polygon2& K, const Polygon2& T);
// Table outline plus one closed orbit polyline: 2 paths.
std::string svg_trajectory(const Polygon2& K, const std::vector<Vec2>& cycle);
// Reflected table copies plus the straightened chain: copies + 1 paths.
std::string svg_unfolding(const Unfolding& unf);
// Table outline plus one path per family member curve: 1 + n paths.
std::string svg_minimizer_family(const Polygon2& K, const std::vector<PolyCurve>& family);

}  // namespace mink
