#pragma once

#include <optional>
#include <vector>

#include "mink/error.hpp"
#include "mink/vec.hpp"

namespace mink {

// Boundary feature of a convex polygon: a vertex, or a point on edge `index`
// at parameter lam in (0,1) measured from vertex(index) toward vertex(index+1).
struct Feature {
  enum class Kind { vertex, edge };
  Kind kind = Kind::vertex;
  int index = 0;
  double lam = 0.0;

  static Feature at_vertex(int i) { return {Kind::vertex, i, 0.0}; }
  static Feature on_edge(int i, double lam) { return {Kind::edge, i, lam}; }
  // Position along the ccw boundary, in units of edges: vertex i maps to i,
  // an edge-i point to i + lam.  Used for deterministic tie-breaking.
  double boundary_pos() const { return kind == Kind::vertex ? double(index) : index + lam; }
};

// Outer normal cone at a boundary point: one unit ray on an edge interior,
// two (ccw-ordered incident edge normals) at a vertex.
struct Cone {
  Feature feature;
  std::vector<Vec2> rays;
};

// Planar convex polygon.  Canonicalized at construction: ccw orientation,
// consecutive collinear vertices merged, lowest-then-leftmost vertex first.
class Polygon2 {
 public:
  explicit Polygon2(std::vector<Vec2> vertices, double eps = 1e-9);

  int size() const { return int(v_.size()); }
  const std::vector<Vec2>& vertices() const { return v_; }
  Vec2 vertex(int i) const { return v_[wrap(i)]; }
  Vec2 edge_vec(int i) const { return vertex(i + 1) - vertex(i); }
  Vec2 edge_normal(int i) const { return n_[wrap(i)]; }
  double edge_support(int i) const { return h_[wrap(i)]; }  // <vertex(i), edge_normal(i)>
  double eps() const { return eps_; }
  double scale() const { return scale_; }  // max vertex norm
  double tol() const;                      // absolute tolerance eps * max(scale, 1)
  int wrap(int i) const {
    int m = size();
    return ((i % m) + m) % m;
  }
  Vec2 point_at(const Feature& f) const;
  bool origin_interior() const;
  Vec2 centroid() const;

 private:
  std::vector<Vec2> v_;
  std::vector<Vec2> n_;     // outer unit edge normals
  std::vector<double> h_;   // per-edge support values
  double eps_ = 1e-9;
  double scale_ = 1.0;
};

Polygon2 regular_polygon(int sides, double circumradius, double phase);

double support(const Polygon2& P, Vec2 u);
double gauge(const Polygon2& P, Vec2 x);
Polygon2 polar(const Polygon2& P);
Cone normal_cone(const Polygon2& P, Vec2 x);
double area(const Polygon2& P);

// Nearest boundary feature of x, or nullopt when x is farther than tol from
// the boundary.  Edge parameters within vertex distance tol snap to vertices.
std::optional<Feature> locate_boundary(const Polygon2& P, Vec2 x, double tol);

struct TranslateVerdict {
  bool translatable = false;
  Vec2 witness;  // valid when translatable
};

// Can the point set be translated into the open interior of P?  Decided by
// intersecting the translate polygons P - q_i; an intersection of area at
// most (eps * max(scale,1))^2 counts as empty.
TranslateVerdict translatable_into_interior(const Polygon2& P, const std::vector<Vec2>& points);

Polygon2 scaled(const Polygon2& P, double alpha);
Polygon2 rotated(const Polygon2& P, double theta);
Polygon2 translated(const Polygon2& P, Vec2 t);

// lam*A + (1-lam)*B via the merged edge-normal sweep; exact at the endpoints.
Polygon2 minkowski_combine(const Polygon2& A, const Polygon2& B, double lam);

namespace detail {

// Clip a convex polygon against the halfplane dot(x, n) <= h (Sutherland-Hodgman step).
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, Vec2 n, double h);
double polygon_area(const std::vector<Vec2>& poly);
Vec2 polygon_centroid(const std::vector<Vec2>& poly);

// True when unit directions `gens` (normal-cone generators of boundary
// points) are not contained in any open halfplane, i.e. their largest cyclic
// angular gap is at most pi + margin.  That is exactly non-translatability
// of the carrying point set into the open interior.
bool gens_not_in_open_halfplane(const std::vector<Vec2>& gens, double margin = 1e-9);

}  // namespace detail

}  // namespace mink
