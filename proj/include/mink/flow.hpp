#pragma once

#include <cstdint>
#include <vector>

#include "mink/curve.hpp"
#include "mink/polygon.hpp"

namespace mink {

// State of the boundary flow on K x T at the start of a position flight:
// position q on the boundary of K, momentum p on the boundary of T.
struct FlowState {
  Feature q_feat;
  Vec2 q;
  Feature p_feat;
  Vec2 p;
};

enum class StepStatus { ok, corner_hit, undefined_cone };

struct StepResult {
  StepStatus status = StepStatus::ok;
  FlowState next;  // valid when status == ok
  Vec2 landing;    // where the position flight ended, also on a corner hit
};

FlowState make_flow_state(const Polygon2& K, const Polygon2& T, const Feature& q_feat,
                          const Feature& p_feat);

// One bounce: q flies along the outward normal of p's edge of T until it
// exits K, then p flies along the inner normal of the landing edge of K
// until it exits T.  Hitting a vertex on either side stops the flow.
StepResult flow_step(const Polygon2& K, const Polygon2& T, const FlowState& s);

enum class FlowVerdict { periodic, corner_hit, open };

struct Trajectory {
  std::vector<FlowState> bounces;  // states at flight starts
  FlowVerdict verdict = FlowVerdict::open;
  int period = 0;        // bounces per cycle when periodic
  double tlength = 0.0;  // support length of one cycle
  double action = 0.0;   // sum of <p, dq> over one cycle
  int fail_step = -1;    // bounce index where a corner was hit
};

Trajectory simulate(const Polygon2& K, const Polygon2& T, const FlowState& start,
                    int max_bounces = 10000);

// One cycle of a periodic trajectory as a closed curve on the boundary of K.
PolyCurve cycle_curve(const Trajectory& traj);

struct LengthClass {
  double tlength = 0.0;
  int period = 0;
  int count = 0;
};

struct ClassTable {
  std::vector<LengthClass> classes;  // sorted by tlength
  int corner_hits = 0;               // discarded and resampled
  int open_orbits = 0;
  int sampled = 0;
};

// Simulates random generic starts (edge interiors, away from midpoints
// unless include_midpoints) and clusters the resulting cycle lengths with
// relative tolerance 1e-6.
ClassTable length_classes(const Polygon2& K, const Polygon2& T, int n_starts, std::uint64_t seed,
                          bool include_midpoints = false);

struct Unfolding {
  std::vector<Vec2> chain;       // unfolded flight endpoints, period + 1 points
  std::vector<Polygon2> copies;  // reflected table copies, one per bounce
  double max_deviation = 0.0;    // distance of chain points from the straight line
};

// Unfolds one cycle by reflecting K across a supporting line at each bounce.
// Requires the Euclidean reflection law: the bisector normal of the incoming
// and outgoing directions must be an outward normal of K at the bounce.
Unfolding unfold(const Polygon2& K, const Trajectory& traj);

}  // namespace mink
