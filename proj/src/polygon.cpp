#include "mink/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mink {

namespace {

double signed_area2(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return s;
}

size_t lowest_leftmost(const std::vector<Vec2>& v) {
  size_t best = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    if (v[i].y < v[best].y || (v[i].y == v[best].y && v[i].x < v[best].x)) best = i;
  }
  return best;
}

}  // namespace

Polygon2::Polygon2(std::vector<Vec2> vertices, double eps) : eps_(eps) {
  if (vertices.size() < 3) throw InvalidArgument("polygon needs at least 3 vertices");
  if (!(eps > 0)) throw InvalidArgument("polygon tolerance must be positive");
  for (const Vec2& p : vertices) scale_ = std::max(scale_, norm(p));
  if (signed_area2(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());

  const double cross_thr = eps_ * scale_ * scale_;
  const double len_thr = eps_ * scale_;
  bool changed = true;
  while (changed && vertices.size() >= 3) {
    changed = false;
    size_t m = vertices.size();
    for (size_t i = 0; i < m; ++i) {
      Vec2 prev = vertices[(i + m - 1) % m];
      Vec2 cur = vertices[i];
      Vec2 next = vertices[(i + 1) % m];
      if (dist(cur, next) <= len_thr) {
        vertices.erase(vertices.begin() + i);
        changed = true;
        break;
      }
      double c = cross(cur - prev, next - cur);
      if (c < -cross_thr) throw InvalidArgument("polygon is not convex");
      if (c <= cross_thr) {
        vertices.erase(vertices.begin() + i);
        changed = true;
        break;
      }
    }
  }
  if (vertices.size() < 3) throw InvalidArgument("polygon is degenerate");

  std::rotate(vertices.begin(), vertices.begin() + lowest_leftmost(vertices), vertices.end());
  v_ = std::move(vertices);
  int m = size();
  n_.resize(m);
  h_.resize(m);
  for (int i = 0; i < m; ++i) {
    n_[i] = normalized(outward(v_[(i + 1) % m] - v_[i]));
    h_[i] = dot(v_[i], n_[i]);
  }
}

double Polygon2::tol() const { return eps_ * std::max(scale_, 1.0); }

Vec2 Polygon2::point_at(const Feature& f) const {
  if (f.kind == Feature::Kind::vertex) return vertex(f.index);
  return vertex(f.index) + f.lam * edge_vec(f.index);
}

bool Polygon2::origin_interior() const {
  for (double h : h_) {
    if (h <= tol()) return false;
  }
  return true;
}

Vec2 Polygon2::centroid() const { return detail::polygon_centroid(v_); }

Polygon2 regular_polygon(int sides, double circumradius, double phase) {
  if (sides < 3) throw InvalidArgument("regular polygon needs at least 3 sides");
  if (!(circumradius > 0)) throw InvalidArgument("circumradius must be positive");
  std::vector<Vec2> v(sides);
  for (int k = 0; k < sides; ++k) {
    double a = phase + 2.0 * std::numbers::pi * k / sides;
    v[k] = {circumradius * std::cos(a), circumradius * std::sin(a)};
  }
  return Polygon2(std::move(v));
}

double support(const Polygon2& P, Vec2 u) {
  double best = dot(P.vertex(0), u);
  for (int i = 1; i < P.size(); ++i) best = std::max(best, dot(P.vertex(i), u));
  return best;
}

double gauge(const Polygon2& P, Vec2 x) {
  if (!P.origin_interior()) throw InvalidBody("gauge needs the origin strictly inside");
  double g = 0.0;
  for (int i = 0; i < P.size(); ++i) g = std::max(g, dot(P.edge_normal(i), x) / P.edge_support(i));
  return g;
}

Polygon2 polar(const Polygon2& P) {
  if (!P.origin_interior()) throw InvalidBody("polar needs the origin strictly inside");
  std::vector<Vec2> v(P.size());
  for (int i = 0; i < P.size(); ++i) v[i] = (1.0 / P.edge_support(i)) * P.edge_normal(i);
  return Polygon2(std::move(v), P.eps());
}

std::optional<Feature> locate_boundary(const Polygon2& P, Vec2 x, double tol) {
  int best_edge = -1;
  double best_d = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (int i = 0; i < P.size(); ++i) {
    Vec2 a = P.vertex(i);
    Vec2 e = P.edge_vec(i);
    double t = std::clamp(dot(x - a, e) / dot(e, e), 0.0, 1.0);
    double d = dist(x, a + t * e);
    if (d < best_d) {
      best_d = d;
      best_edge = i;
      best_t = t;
    }
  }
  if (best_d > tol) return std::nullopt;
  double len = norm(P.edge_vec(best_edge));
  if (best_t * len <= tol) return Feature::at_vertex(best_edge);
  if ((1.0 - best_t) * len <= tol) return Feature::at_vertex(P.wrap(best_edge + 1));
  return Feature::on_edge(best_edge, best_t);
}

Cone normal_cone(const Polygon2& P, Vec2 x) {
  auto f = locate_boundary(P, x, P.tol());
  if (!f) throw NotOnBoundary("point is not on the polygon boundary");
  Cone c;
  c.feature = *f;
  if (f->kind == Feature::Kind::edge) {
    c.rays = {P.edge_normal(f->index)};
  } else {
    c.rays = {P.edge_normal(f->index - 1), P.edge_normal(f->index)};
  }
  return c;
}

double area(const Polygon2& P) { return 0.5 * signed_area2(P.vertices()); }

namespace detail {

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, Vec2 n, double h) {
  std::vector<Vec2> out;
  size_t m = poly.size();
  if (m == 0) return out;
  out.reserve(m + 1);
  for (size_t i = 0; i < m; ++i) {
    Vec2 cur = poly[i];
    Vec2 nxt = poly[(i + 1) % m];
    double dc = dot(cur, n) - h;
    double dn = dot(nxt, n) - h;
    if (dc <= 0.0) out.push_back(cur);
    if ((dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0)) {
      double t = dc / (dc - dn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return 0.0;
  return 0.5 * std::abs(signed_area2(poly));
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
  double a2 = signed_area2(poly);
  if (std::abs(a2) < 1e-300) {  // nearly degenerate: fall back to vertex mean
    Vec2 s{0, 0};
    for (Vec2 p : poly) s += p;
    return (1.0 / double(poly.size())) * s;
  }
  Vec2 c{0, 0};
  for (size_t i = 0; i < poly.size(); ++i) {
    Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
    c += cross(p, q) * (p + q);
  }
  return (1.0 / (3.0 * a2)) * c;
}

bool gens_not_in_open_halfplane(const std::vector<Vec2>& gens, double margin) {
  if (gens.empty()) return false;
  std::vector<double> ang(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) ang[i] = std::atan2(gens[i].y, gens[i].x);
  std::sort(ang.begin(), ang.end());
  double max_gap = ang.front() + 2.0 * std::numbers::pi - ang.back();
  for (size_t i = 1; i < ang.size(); ++i) max_gap = std::max(max_gap, ang[i] - ang[i - 1]);
  return max_gap <= std::numbers::pi + margin;
}

}  // namespace detail

TranslateVerdict translatable_into_interior(const Polygon2& P, const std::vector<Vec2>& points) {
  if (points.empty()) throw InvalidArgument("translatability test needs at least one point");

  // Boundary-only fast path: the point set resists translation exactly when
  // its normal-cone generators leave no open halfplane free.
  std::vector<Vec2> gens;
  bool all_on_boundary = true;
  for (Vec2 q : points) {
    auto f = locate_boundary(P, q, P.tol());
    if (!f) {
      all_on_boundary = false;
      break;
    }
    if (f->kind == Feature::Kind::edge) {
      gens.push_back(P.edge_normal(f->index));
    } else {
      gens.push_back(P.edge_normal(f->index - 1));
      gens.push_back(P.edge_normal(f->index));
    }
  }
  if (all_on_boundary && detail::gens_not_in_open_halfplane(gens)) return {false, {}};

  // General path: intersect the translate polygons P - q_i.
  std::vector<Vec2> region(P.vertices());
  for (Vec2& p : region) p -= points[0];
  for (size_t i = 1; i < points.size() && region.size() >= 3; ++i) {
    for (int e = 0; e < P.size(); ++e) {
      region = detail::clip_halfplane(region, P.edge_normal(e),
                                      P.edge_support(e) - dot(points[i], P.edge_normal(e)));
      if (region.size() < 3) break;
    }
  }
  double thr = P.tol() * P.tol();
  if (detail::polygon_area(region) <= thr) return {false, {}};
  return {true, detail::polygon_centroid(region)};
}

Polygon2 scaled(const Polygon2& P, double alpha) {
  if (!(alpha > 0)) throw InvalidArgument("scale factor must be positive");
  std::vector<Vec2> v(P.vertices());
  for (Vec2& p : v) p = alpha * p;
  return Polygon2(std::move(v), P.eps());
}

Polygon2 rotated(const Polygon2& P, double theta) {
  std::vector<Vec2> v(P.vertices());
  for (Vec2& p : v) p = rotated(p, theta);
  return Polygon2(std::move(v), P.eps());
}

Polygon2 translated(const Polygon2& P, Vec2 t) {
  std::vector<Vec2> v(P.vertices());
  for (Vec2& p : v) p += t;
  return Polygon2(std::move(v), P.eps());
}

Polygon2 minkowski_combine(const Polygon2& A, const Polygon2& B, double lam) {
  if (!(lam >= 0.0 && lam <= 1.0)) throw InvalidArgument("combination weight must be in [0,1]");
  if (lam == 0.0) return B;
  if (lam == 1.0) return A;
  Polygon2 a = scaled(A, lam);
  Polygon2 b = scaled(B, 1.0 - lam);

  // Both canonical orders start at the lowest-then-leftmost vertex, so the
  // edge direction angles are increasing; merge the two edge fans.
  auto cum_angles = [](const Polygon2& P) {
    std::vector<double> th(P.size());
    th[0] = std::atan2(P.edge_vec(0).y, P.edge_vec(0).x);
    for (int i = 1; i < P.size(); ++i) {
      Vec2 e0 = P.edge_vec(i - 1), e1 = P.edge_vec(i);
      th[i] = th[i - 1] + std::atan2(cross(e0, e1), dot(e0, e1));
    }
    return th;
  };
  std::vector<double> ta = cum_angles(a), tb = cum_angles(b);
  std::vector<Vec2> out;
  out.reserve(a.size() + b.size());
  Vec2 cur = a.vertex(0) + b.vertex(0);
  int ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    out.push_back(cur);
    if (ib >= b.size() || (ia < a.size() && ta[ia] <= tb[ib])) {
      cur += a.edge_vec(ia);
      ++ia;
    } else {
      cur += b.edge_vec(ib);
      ++ib;
    }
  }
  return Polygon2(std::move(out), std::min(A.eps(), B.eps()));
}

}  // namespace mink
