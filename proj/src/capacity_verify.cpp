#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mink/capacity.hpp"

namespace mink {

namespace {

struct FaceSeg {
  Vec2 a, b;       // face of T carrying the momentum: vertex (a==b) or edge a->b
  bool is_edge = false;
  Vec2 at(double mu) const { return a + mu * (b - a); }
};

struct ConeAt {
  Vec2 g1, g2;     // ccw span; equal for a single ray
  bool is_ray = false;
};

struct Interval {
  double lo = 0.0, hi = -1.0;
  bool empty() const { return lo > hi; }
  double mid() const { return 0.5 * (lo + hi); }
};

// Feasible momentum parameters mu on face B reachable from parameters
// [s.lo, s.hi] on face A through the cone: v = B(mu) - A(sigma) in cone.
// Solved by clipping the (sigma, mu) parameter rectangle with the cone's
// halfplanes and projecting onto mu.
Interval propagate(const FaceSeg& A, Interval s, const ConeAt& cone, const FaceSeg& B,
                   double slack) {
  Vec2 ea = A.b - A.a;
  Vec2 eb = B.b - B.a;
  Vec2 c0 = B.a - A.a;  // v(sigma, mu) = c0 + mu*eb - sigma*ea
  std::vector<Vec2> poly = {{s.lo, 0.0}, {s.hi, 0.0}, {s.hi, 1.0}, {s.lo, 1.0}};
  auto clip_ge = [&](Vec2 g, bool use_cross, double sign) {
    // use_cross: sign*cross(g, v) >= -slack; else sign*dot(g, v) >= -slack.
    double kc, ks, km;  // constant, sigma, mu coefficients of the functional
    if (use_cross) {
      kc = cross(g, c0);
      ks = -cross(g, ea);
      km = cross(g, eb);
    } else {
      kc = dot(g, c0);
      ks = -dot(g, ea);
      km = dot(g, eb);
    }
    kc *= sign;
    ks *= sign;
    km *= sign;
    // kc + ks*sigma + km*mu >= -slack  <=>  (-ks)*sigma + (-km)*mu <= kc + slack
    poly = detail::clip_halfplane(poly, {-ks, -km}, kc + slack);
  };
  if (cone.is_ray) {
    clip_ge(cone.g1, true, 1.0);
    clip_ge(cone.g1, true, -1.0);
    clip_ge(cone.g1, false, 1.0);
  } else {
    clip_ge(cone.g1, true, 1.0);
    clip_ge(cone.g2, true, -1.0);
  }
  if (poly.empty()) return {};
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Vec2& p : poly) {
    lo = std::min(lo, p.y);
    hi = std::max(hi, p.y);
  }
  return {std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0)};
}

// Feasible sigma on face A with target - A(sigma) in cone.
Interval feasible_prev(const FaceSeg& A, Interval s, const ConeAt& cone, Vec2 target,
                       double slack) {
  Vec2 ea = A.b - A.a;
  Vec2 c0 = target - A.a;  // v(sigma) = c0 - sigma*ea
  Interval out = s;
  auto restrict_ge = [&](double kc, double ks) {
    // kc + ks*sigma >= -slack
    if (std::abs(ks) < 1e-15) {
      if (kc < -slack) out = {};
      return;
    }
    double bound = (-slack - kc) / ks;
    if (ks > 0) {
      out.lo = std::max(out.lo, bound);
    } else {
      out.hi = std::min(out.hi, bound);
    }
  };
  if (cone.is_ray) {
    restrict_ge(cross(cone.g1, c0), -cross(cone.g1, ea));
    restrict_ge(-cross(cone.g1, c0), cross(cone.g1, ea));
    restrict_ge(dot(cone.g1, c0), -dot(cone.g1, ea));
  } else {
    restrict_ge(cross(cone.g1, c0), -cross(cone.g1, ea));
    restrict_ge(-cross(cone.g2, c0), cross(cone.g2, ea));
  }
  return out;
}

}  // namespace

BilliardCheck verify_billiard(const Polygon2& K, const Polygon2& T, const PolyCurve& curve,
                              double tol) {
  int n = int(curve.points.size());
  if (n < 2) throw InvalidArgument("billiard verification needs at least 2 points");

  std::vector<Feature> feats(n);
  for (int i = 0; i < n; ++i) {
    auto f = locate_boundary(K, curve.points[i], std::max(tol, K.tol()));
    if (!f) throw NotOnBoundary("curve point is not on the boundary of K");
    feats[i] = *f;
  }

  BilliardCheck out;
  std::vector<Vec2> dirs(n);
  for (int s = 0; s < n; ++s) {
    dirs[s] = curve.points[(s + 1) % n] - curve.points[s];
    if (norm(dirs[s]) <= K.tol()) {
      out.reason = "segment " + std::to_string(s) + " is degenerate";
      out.fail_index = s;
      return out;
    }
  }

  // Momentum p_s lives on the face of T maximizing direction dirs[s]:
  // an edge when the direction is an edge normal of T, a vertex otherwise.
  std::vector<FaceSeg> faces(n);
  for (int s = 0; s < n; ++s) {
    Vec2 d = normalized(dirs[s]);
    bool got = false;
    for (int e = 0; e < T.size(); ++e) {
      if (dot(d, T.edge_normal(e)) > 0 && std::abs(cross(d, T.edge_normal(e))) <= tol) {
        faces[s] = {T.vertex(e), T.vertex(e + 1), true};
        got = true;
        break;
      }
    }
    if (!got) {
      int w = 0;
      double bestdot = dot(T.vertex(0), d);
      for (int t = 1; t < T.size(); ++t) {
        if (dot(T.vertex(t), d) > bestdot) {
          bestdot = dot(T.vertex(t), d);
          w = t;
        }
      }
      faces[s] = {T.vertex(w), T.vertex(w), false};
    }
  }

  // Momentum transfer cone at bounce r is -N_K(q_r).
  std::vector<ConeAt> cones(n);
  for (int r = 0; r < n; ++r) {
    const Feature& f = feats[r];
    if (f.kind == Feature::Kind::edge) {
      cones[r] = {-K.edge_normal(f.index), -K.edge_normal(f.index), true};
    } else {
      cones[r] = {-K.edge_normal(f.index - 1), -K.edge_normal(f.index), false};
    }
  }

  double slack = tol * std::max(1.0, T.scale());

  // All faces are vertices: the chain is fully determined, check directly.
  bool any_edge_face = false;
  for (const FaceSeg& f : faces) any_edge_face |= f.is_edge;
  if (!any_edge_face) {
    for (int r = 0; r < n; ++r) {
      Vec2 jump = faces[r].a - faces[(r + n - 1) % n].a;
      if (norm(jump) <= slack) continue;
      const ConeAt& c = cones[r];
      bool ok = c.is_ray ? std::abs(cross(c.g1, jump)) <= slack && dot(c.g1, jump) >= -slack
                         : cross(c.g1, jump) >= -slack && cross(jump, c.g2) >= -slack;
      if (!ok) {
        out.reason = "bounce " + std::to_string(r) + ": momentum jump leaves the transfer cone";
        out.fail_index = r;
        return out;
      }
    }
    out.certified = true;
    out.momenta.resize(n);
    for (int s = 0; s < n; ++s) out.momenta[s] = faces[s].a;
    return out;
  }

  // Rotate so that face 0 is a vertex when one exists; otherwise the start
  // parameter on face 0 is found by minimizing the closure gap over the
  // exact feasible window.
  int rot = 0;
  bool anchored = false;
  for (int s = 0; s < n; ++s) {
    if (!faces[s].is_edge) {
      rot = s;
      anchored = true;
      break;
    }
  }
  auto face_of = [&](int s) -> const FaceSeg& { return faces[(s + rot) % n]; };
  auto cone_of = [&](int r) -> const ConeAt& { return cones[(r + rot) % n]; };

  int fail_step = -1;
  auto closure_interval = [&](double sigma0) -> Interval {
    Interval s{sigma0, sigma0};
    for (int r = 1; r < n; ++r) {
      s = propagate(face_of(r - 1), s, cone_of(r), face_of(r), slack);
      if (s.empty()) {
        fail_step = (r + rot) % n;
        return {};
      }
    }
    return propagate(face_of(n - 1), s, cone_of(0), face_of(0), slack);
  };
  auto gap = [&](double sigma0) {
    Interval back = closure_interval(sigma0);
    if (back.empty()) return std::numeric_limits<double>::infinity();
    return std::max(back.lo - sigma0, sigma0 - back.hi);
  };

  double sigma0 = 0.0;
  if (!anchored) {
    // Feasible start parameters on face 0 (those with a nonempty closure
    // interval) form an interval: the chain is a composition of convex
    // relations in consecutive face parameters.  Compute it exactly by
    // propagating backward through the negated cones, then minimize the
    // closure gap, which is convex on that interval, by golden section.
    auto neg = [](const ConeAt& c) { return ConeAt{-1.0 * c.g1, -1.0 * c.g2, c.is_ray}; };
    Interval dom{0.0, 1.0};
    dom = propagate(face_of(0), dom, neg(cone_of(0)), face_of(n - 1), slack);
    for (int r = n - 1; r >= 1 && !dom.empty(); --r) {
      dom = propagate(face_of(r), dom, neg(cone_of(r)), face_of(r - 1), slack);
      if (dom.empty()) fail_step = (r + rot) % n;
    }
    double best_g = std::numeric_limits<double>::infinity();
    double best_s = 0.0;
    if (!dom.empty()) {
      double lo = dom.lo, hi = dom.hi;
      best_s = dom.mid();
      best_g = gap(best_s);
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
      double g1 = gap(x1), g2 = gap(x2);
      for (int it = 0; it < 160 && best_g > 1e-12; ++it) {
        if (g1 <= g2) {
          hi = x2;
          x2 = x1;
          g2 = g1;
          x1 = hi - phi * (hi - lo);
          g1 = gap(x1);
        } else {
          lo = x1;
          x1 = x2;
          g1 = g2;
          x2 = lo + phi * (hi - lo);
          g2 = gap(x2);
        }
        if (g1 < best_g) {
          best_g = g1;
          best_s = x1;
        }
        if (g2 < best_g) {
          best_g = g2;
          best_s = x2;
        }
      }
    }
    if (best_g > 1e-9) {
      out.reason = fail_step >= 0 ? "bounce " + std::to_string(fail_step) +
                                        ": no admissible momentum transfer"
                                  : "momentum chain does not close";
      out.fail_index = fail_step;
      return out;
    }
    sigma0 = best_s;
  } else {
    if (gap(0.0) > 1e-9) {
      out.reason = fail_step >= 0 ? "bounce " + std::to_string(fail_step) +
                                        ": no admissible momentum transfer"
                                  : "momentum chain does not close";
      out.fail_index = fail_step;
      return out;
    }
  }

  // Fix the start, recompute the forward intervals, then walk backward
  // choosing interval midpoints compatible with the established closure.
  std::vector<Interval> fwd(n);
  fwd[0] = {sigma0, sigma0};
  for (int r = 1; r < n; ++r) fwd[r] = propagate(face_of(r - 1), fwd[r - 1], cone_of(r), face_of(r), slack);

  std::vector<double> mu(n, sigma0);
  Vec2 p0 = face_of(0).at(sigma0);
  Vec2 target = p0;
  for (int r = n - 1; r >= 1; --r) {
    Interval ok = feasible_prev(face_of(r), fwd[r], cone_of((r + 1) % n), target, slack);
    if (ok.empty()) {  // numeric slop; fall back to the forward interval
      ok = fwd[r];
    }
    mu[r] = ok.mid();
    target = face_of(r).at(mu[r]);
  }

  out.certified = true;
  out.momenta.resize(n);
  for (int r = 0; r < n; ++r) out.momenta[(r + rot) % n] = face_of(r).at(mu[r]);
  return out;
}

}  // namespace mink
