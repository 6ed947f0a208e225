#include <cmath>

#include "mink/capacity.hpp"

namespace mink {

SweepResult interpolation_sweep(const Polygon2& LK, const Polygon2& LT, const Polygon2& CK,
                                const Polygon2& CT, int steps) {
  if (steps < 2) throw InvalidArgument("sweep needs at least 2 steps");
  auto sys_at = [&](double lam) {
    Polygon2 K = minkowski_combine(LK, CK, lam);
    Polygon2 T = minkowski_combine(LT, CT, lam);
    return systolic_ratio(K, T);
  };

  SweepResult out;
  out.rows.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    double lam = double(i) / steps;
    out.rows.push_back({lam, sys_at(lam)});
  }
  if (!(out.rows.front().sys > 1.0 && out.rows.back().sys < 1.0))
    throw NoCrossing("ratio does not cross 1 along the interpolation");

  int i = 0;
  while (i + 1 <= steps && (out.rows[i].sys - 1.0) * (out.rows[i + 1].sys - 1.0) > 0.0) ++i;
  double above_lam = out.rows[i].lambda, above_sys = out.rows[i].sys;
  double below_lam = out.rows[i + 1].lambda, below_sys = out.rows[i + 1].sys;
  if (above_sys < below_sys) {
    std::swap(above_lam, below_lam);
    std::swap(above_sys, below_sys);
  }

  double root_lam = 0.5 * (above_lam + below_lam);
  double root_sys = sys_at(root_lam);
  for (int it = 0; it < 200 && std::abs(root_sys - 1.0) > 1e-6; ++it) {
    if (root_sys > 1.0) {
      above_lam = root_lam;
      above_sys = root_sys;
    } else {
      below_lam = root_lam;
      below_sys = root_sys;
    }
    root_lam = 0.5 * (above_lam + below_lam);
    root_sys = sys_at(root_lam);
  }
  out.root_lambda = root_lam;
  out.root_sys = root_sys;
  bool lo_is_above = above_lam < below_lam;
  out.bracket_lo = lo_is_above ? above_lam : below_lam;
  out.bracket_hi = lo_is_above ? below_lam : above_lam;
  out.bracket_lo_sys = lo_is_above ? above_sys : below_sys;
  out.bracket_hi_sys = lo_is_above ? below_sys : above_sys;
  return out;
}

}  // namespace mink
