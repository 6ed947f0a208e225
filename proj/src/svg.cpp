#include <algorithm>
#include <cstdio>
#include <limits>

#include "mink/svg.hpp"

namespace mink {

namespace {

// Collects paths in user coordinates (y up), then emits a flipped-y document
// with a margin around the joint bounding box.
struct Canvas {
  struct Path {
    std::vector<Vec2> pts;
    bool closed = true;
    const char* stroke = "black";
    const char* fill = "none";
  };
  std::vector<Path> paths;
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;

  void add(std::vector<Vec2> pts, bool closed, const char* stroke, const char* fill = "none") {
    for (const Vec2& p : pts) {
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
    paths.push_back({std::move(pts), closed, stroke, fill});
  }

  std::string render() const {
    double margin = 0.05 * std::max(xhi - xlo, yhi - ylo) + 0.05;
    double w = xhi - xlo + 2 * margin, h = yhi - ylo + 2 * margin;
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "viewBox=\"%.6f %.6f %.6f %.6f\">\n",
                  xlo - margin, -yhi - margin, w, h);
    out += buf;
    for (const Path& p : paths) {
      out += "  <path d=\"";
      for (size_t i = 0; i < p.pts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6f %.6f", i == 0 ? "M " : " L ", p.pts[i].x,
                      -p.pts[i].y);
        out += buf;
      }
      if (p.closed) out += " Z";
      std::snprintf(buf, sizeof buf,
                    "\" fill=\"%s\" stroke=\"%s\" stroke-width=\"%.4f\"/>\n", p.fill, p.stroke,
                    0.006 * std::max(w, h));
      out += buf;
    }
    out += "</svg>\n";
    return out;
  }
};

std::vector<Vec2> shifted(const std::vector<Vec2>& pts, Vec2 t) {
  std::vector<Vec2> out = pts;
  for (Vec2& p : out) p += t;
  return out;
}

}  // namespace

std::string svg_product_pair(const Polygon2& K, const Polygon2& T) {
  Canvas c;
  double kxhi = -std::numeric_limits<double>::infinity();
  double txlo = std::numeric_limits<double>::infinity();
  for (const Vec2& v : K.vertices()) kxhi = std::max(kxhi, v.x);
  for (const Vec2& v : T.vertices()) txlo = std::min(txlo, v.x);
  double gap = 0.4 * std::max(K.scale(), T.scale());
  c.add(K.vertices(), true, "black");
  c.add(shifted(T.vertices(), {kxhi - txlo + gap, 0.0}), true, "black");
  return c.render();
}

std::string svg_trajectory(const Polygon2& K, const std::vector<Vec2>& cycle) {
  Canvas c;
  c.add(K.vertices(), true, "black");
  c.add(cycle, true, "crimson");
  return c.render();
}

std::string svg_unfolding(const Unfolding& unf) {
  Canvas c;
  for (const Polygon2& copy : unf.copies) c.add(copy.vertices(), true, "gray");
  c.add(unf.chain, false, "crimson");
  return c.render();
}

std::string svg_minimizer_family(const Polygon2& K, const std::vector<PolyCurve>& family) {
  Canvas c;
  c.add(K.vertices(), true, "black");
  for (const PolyCurve& curve : family) c.add(curve.points, true, "royalblue");
  return c.render();
}

}  // namespace mink
