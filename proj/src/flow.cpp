#include <algorithm>
#include <cmath>
#include <limits>

#include "mink/flow.hpp"
#include "mink/rng.hpp"

namespace mink {

namespace {

// Exit of the ray x + t*d (t > 0) from a convex polygon containing x.
double ray_exit(const Polygon2& P, Vec2 x, Vec2 d) {
  double t = std::numeric_limits<double>::infinity();
  for (int e = 0; e < P.size(); ++e) {
    double dd = dot(P.edge_normal(e), d);
    if (dd <= 1e-14) continue;
    t = std::min(t, (P.edge_support(e) - dot(P.edge_normal(e), x)) / dd);
  }
  return std::max(t, 0.0);
}

bool strictly_entering(const Polygon2& P, const Feature& f, Vec2 d) {
  if (f.kind == Feature::Kind::edge) return dot(d, P.edge_normal(f.index)) < -1e-12;
  return dot(d, P.edge_normal(f.index - 1)) < -1e-12 && dot(d, P.edge_normal(f.index)) < -1e-12;
}

struct Iso {  // planar isometry x -> L x + t, L stored by columns
  Vec2 col0{1, 0}, col1{0, 1}, t{0, 0};
  Vec2 operator()(Vec2 x) const { return x.x * col0 + x.y * col1 + t; }
  Iso after(const Iso& b) const {  // (*this) composed after b
    Iso r;
    r.col0 = b.col0.x * col0 + b.col0.y * col1;
    r.col1 = b.col1.x * col0 + b.col1.y * col1;
    r.t = (*this)(b.t);
    return r;
  }
};

Iso reflection(Vec2 p0, Vec2 n) {  // across the line through p0 with unit normal n
  Iso r;
  r.col0 = {1 - 2 * n.x * n.x, -2 * n.x * n.y};
  r.col1 = {-2 * n.x * n.y, 1 - 2 * n.y * n.y};
  r.t = 2.0 * dot(p0, n) * n;
  return r;
}

}  // namespace

FlowState make_flow_state(const Polygon2& K, const Polygon2& T, const Feature& q_feat,
                          const Feature& p_feat) {
  return {q_feat, K.point_at(q_feat), p_feat, T.point_at(p_feat)};
}

StepResult flow_step(const Polygon2& K, const Polygon2& T, const FlowState& s) {
  StepResult out;
  if (s.p_feat.kind == Feature::Kind::vertex) {
    out.status = StepStatus::undefined_cone;
    return out;
  }
  Vec2 d = T.edge_normal(s.p_feat.index);
  if (!strictly_entering(K, s.q_feat, d)) {
    out.status = StepStatus::undefined_cone;
    return out;
  }
  Vec2 x = s.q + ray_exit(K, s.q, d) * d;
  out.landing = x;
  auto fx = locate_boundary(K, x, std::max(K.tol(), 1e-12));
  if (!fx) throw InternalError("flight left the boundary");
  if (fx->kind == Feature::Kind::vertex) {
    out.status = StepStatus::corner_hit;
    return out;
  }

  Vec2 d2 = -K.edge_normal(fx->index);
  Vec2 y = s.p + ray_exit(T, s.p, d2) * d2;
  auto fy = locate_boundary(T, y, std::max(T.tol(), 1e-12));
  if (!fy) throw InternalError("momentum flight left the boundary");
  if (fy->kind == Feature::Kind::vertex) {
    out.status = StepStatus::corner_hit;
    return out;
  }
  out.next = {*fx, K.point_at(*fx), *fy, T.point_at(*fy)};
  return out;
}

Trajectory simulate(const Polygon2& K, const Polygon2& T, const FlowState& start,
                    int max_bounces) {
  Trajectory traj;
  double close_tol = 1e-9 * std::max({1.0, K.scale(), T.scale()});
  FlowState s = start;
  for (int step = 0; step < max_bounces; ++step) {
    traj.bounces.push_back(s);
    StepResult r = flow_step(K, T, s);
    if (r.status == StepStatus::undefined_cone) {
      if (step == 0) throw InvalidArgument("flow direction undefined at the start state");
      throw InternalError("flow direction became undefined");
    }
    if (r.status == StepStatus::corner_hit) {
      traj.verdict = FlowVerdict::corner_hit;
      traj.fail_step = step;
      return traj;
    }
    s = r.next;
    if (dist(s.q, start.q) <= close_tol && dist(s.p, start.p) <= close_tol) {
      traj.verdict = FlowVerdict::periodic;
      traj.period = step + 1;
      break;
    }
  }
  if (traj.verdict != FlowVerdict::periodic) return traj;

  int n = traj.period;
  for (int j = 0; j < n; ++j) {
    Vec2 dq = traj.bounces[(j + 1) % n].q - traj.bounces[j].q;
    traj.tlength += support(T, dq);
    traj.action += dot(traj.bounces[j].p, dq);
  }
  return traj;
}

PolyCurve cycle_curve(const Trajectory& traj) {
  if (traj.verdict != FlowVerdict::periodic) throw InvalidArgument("trajectory is not periodic");
  PolyCurve c;
  double a2 = 0.0;
  for (int j = 0; j < traj.period; ++j) {
    c.points.push_back(traj.bounces[j].q);
    c.features.push_back(traj.bounces[j].q_feat);
  }
  for (int j = 0; j < traj.period; ++j)
    a2 += cross(c.points[j], c.points[(j + 1) % traj.period]);
  c.ccw = a2 >= 0.0;
  return c;
}

ClassTable length_classes(const Polygon2& K, const Polygon2& T, int n_starts, std::uint64_t seed,
                          bool include_midpoints) {
  if (n_starts < 1) throw InvalidArgument("need at least one start");
  ClassTable table;
  auto record = [&](const Trajectory& traj) {
    if (traj.verdict == FlowVerdict::corner_hit) {
      ++table.corner_hits;
      return;
    }
    ++table.sampled;
    if (traj.verdict == FlowVerdict::open) {
      ++table.open_orbits;
      return;
    }
    for (LengthClass& c : table.classes) {
      if (c.period == traj.period &&
          std::abs(traj.tlength - c.tlength) <= 1e-6 * std::max(1.0, c.tlength)) {
        ++c.count;
        return;
      }
    }
    table.classes.push_back({traj.tlength, traj.period, 1});
  };
  // Midpoint starts are exceptional (they can close early), so they are
  // covered deterministically: one start per edge pair with both parameters
  // exactly 1/2, before the random generic sampling.
  if (include_midpoints) {
    for (int e = 0; e < K.size(); ++e) {
      for (int f = 0; f < T.size(); ++f) {
        if (table.sampled >= n_starts) break;
        if (dot(T.edge_normal(f), K.edge_normal(e)) >= -1e-9) continue;
        record(simulate(K, T, make_flow_state(K, T, Feature::on_edge(e, 0.5),
                                              Feature::on_edge(f, 0.5))));
      }
    }
  }
  Rng rng(seed);
  int attempts = 0, cap = 10 * n_starts + 100;
  while (table.sampled < n_starts && attempts < cap) {
    ++attempts;
    int e = rng.uniform_int(K.size());
    double lam = rng.uniform(0.02, 0.98);
    if (std::abs(lam - 0.5) < 1e-3) continue;
    Feature qf = Feature::on_edge(e, lam);
    std::vector<int> entering;
    for (int f = 0; f < T.size(); ++f) {
      if (dot(T.edge_normal(f), K.edge_normal(e)) < -1e-9) entering.push_back(f);
    }
    if (entering.empty()) continue;
    Feature pf = Feature::on_edge(entering[rng.uniform_int(int(entering.size()))],
                                  rng.uniform(0.02, 0.98));
    record(simulate(K, T, make_flow_state(K, T, qf, pf)));
  }
  std::sort(table.classes.begin(), table.classes.end(),
            [](const LengthClass& a, const LengthClass& b) { return a.tlength < b.tlength; });
  return table;
}

Unfolding unfold(const Polygon2& K, const Trajectory& traj) {
  if (traj.verdict != FlowVerdict::periodic) throw InvalidArgument("trajectory is not periodic");
  int n = traj.period;
  auto q = [&](int j) { return traj.bounces[((j % n) + n) % n].q; };

  Unfolding out;
  Iso A;  // maps table copy s into the unfolded plane
  out.copies.push_back(K);
  out.chain.push_back(q(0));
  for (int s = 1; s < n; ++s) {
    Vec2 uin = normalized(q(s) - q(s - 1));
    Vec2 uout = normalized(q(s + 1) - q(s));
    Vec2 diff = uin - uout;
    if (norm(diff) > 1e-12) {
      Vec2 nhat = normalized(diff);
      const Feature& f = traj.bounces[s].q_feat;
      bool supported;
      if (f.kind == Feature::Kind::edge) {
        supported = std::abs(cross(nhat, K.edge_normal(f.index))) <= 1e-9 &&
                    dot(nhat, K.edge_normal(f.index)) > 0;
      } else {
        Vec2 g1 = K.edge_normal(f.index - 1), g2 = K.edge_normal(f.index);
        supported = cross(g1, nhat) >= -1e-9 && cross(nhat, g2) >= -1e-9;
      }
      if (!supported)
        throw UnfoldUnsupported("reflection bisector is not an outward normal at the bounce");
      A = A.after(reflection(q(s), nhat));
    }
    out.chain.push_back(A(q(s)));
    std::vector<Vec2> img;
    img.reserve(K.size());
    for (const Vec2& v : K.vertices()) img.push_back(A(v));
    out.copies.emplace_back(img, K.eps());
  }
  out.chain.push_back(A(q(n)));

  Vec2 a = out.chain.front(), b = out.chain.back();
  Vec2 dir = b - a;
  double len = norm(dir);
  for (const Vec2& p : out.chain) {
    double dev = len > 0 ? std::abs(cross(dir, p - a)) / len : dist(p, a);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

}  // namespace mink
