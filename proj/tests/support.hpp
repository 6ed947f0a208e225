#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mink/polygon.hpp"
#include "mink/rng.hpp"

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

// The pentagon pair: K with a vertex at (1,0), T the same pentagon turned a
// quarter turn so its first vertex sits at (0,-1).
inline mink::Polygon2 pentagon_k() { return mink::regular_polygon(5, 1.0, 0.0); }
inline mink::Polygon2 pentagon_t() { return mink::regular_polygon(5, 1.0, -kPi / 2.0); }
inline mink::Polygon2 square_pm1() {
  return mink::Polygon2({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
}
inline mink::Polygon2 cross_pm1() {
  return mink::Polygon2({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
}

// Closed forms for the pentagon pair.
inline const double kPentCapacity = 2.0 * std::cos(kPi / 10.0) * (1.0 + std::cos(kPi / 5.0));
inline const double kPentArea = 2.5 * std::sin(2.0 * kPi / 5.0);
inline const double kPentSys = (std::sqrt(5.0) + 3.0) / 5.0;

// Pentagon vertices in construction order (before canonicalization):
// v_k at angle 2 pi k / 5, w_k at 2 pi k / 5 - pi / 2.
inline mink::Vec2 pent_v(int k) {
  return {std::cos(2.0 * kPi * k / 5.0), std::sin(2.0 * kPi * k / 5.0)};
}
inline mink::Vec2 pent_w(int k) {
  double a = 2.0 * kPi * k / 5.0 - kPi / 2.0;
  return {std::cos(a), std::sin(a)};
}

// Random convex polygon with n vertices and the origin strictly interior.
// Draws sorted boundary angles with a minimum gap and independent radii,
// rejecting draws whose vertex sequence fails strict convexity.
inline mink::Polygon2 random_convex(mink::Rng& rng, int n, double rmin = 0.6, double rmax = 1.4) {
  for (;;) {
    std::vector<double> ang(n);
    for (double& a : ang) a = rng.uniform(0.0, 2.0 * kPi);
    std::sort(ang.begin(), ang.end());
    bool ok = true;
    for (int i = 0; ok && i < n; ++i) {
      double gap = (i + 1 < n ? ang[i + 1] : ang[0] + 2.0 * kPi) - ang[i];
      if (gap < 0.15) ok = false;
    }
    if (!ok) continue;
    std::vector<mink::Vec2> v(n);
    for (int i = 0; i < n; ++i) {
      double r = rng.uniform(rmin, rmax);
      v[i] = {r * std::cos(ang[i]), r * std::sin(ang[i])};
    }
    try {
      mink::Polygon2 p(v);
      if (p.size() == n && p.origin_interior()) return p;
    } catch (const mink::Error&) {
    }
  }
}

inline mink::Polygon2 random_convex_sized(mink::Rng& rng, int nmin, int nmax) {
  return random_convex(rng, nmin + rng.uniform_int(nmax - nmin + 1));
}

// A strict subset of P: clip off at least one vertex with a random chord,
// falling back to shrinking toward the centroid when the clip degenerates.
inline mink::Polygon2 random_subset(mink::Rng& rng, const mink::Polygon2& P) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    double a = rng.uniform(0.0, 2.0 * kPi);
    mink::Vec2 u{std::cos(a), std::sin(a)};
    double h = mink::support(P, u) * rng.uniform(0.55, 0.95);
    std::vector<mink::Vec2> clipped = mink::detail::clip_halfplane(P.vertices(), u, h);
    if (clipped.size() < 3 || mink::detail::polygon_area(clipped) < 0.3 * area(P)) continue;
    try {
      return mink::Polygon2(clipped);
    } catch (const mink::Error&) {
    }
  }
  mink::Vec2 c = P.centroid();
  std::vector<mink::Vec2> v;
  for (const mink::Vec2& x : P.vertices()) v.push_back(c + 0.8 * (x - c));
  return mink::Polygon2(v);
}

// Equality as cyclic vertex sequences: canonicalization is deterministic,
// but ties for the starting vertex can break differently under rounding.
inline bool same_polygon(const mink::Polygon2& A, const mink::Polygon2& B, double tol) {
  if (A.size() != B.size()) return false;
  for (int off = 0; off < A.size(); ++off) {
    bool all = true;
    for (int i = 0; all && i < A.size(); ++i)
      if (mink::dist(A.vertex(i + off), B.vertex(i)) > tol) all = false;
    if (all) return true;
  }
  return false;
}

inline bool has_vertex(const mink::Polygon2& P, mink::Vec2 x, double tol) {
  for (const mink::Vec2& v : P.vertices())
    if (mink::dist(v, x) <= tol) return true;
  return false;
}

// Minimal XML well-formedness scan: every tag closes, nesting matches.
// Comments and processing instructions are skipped; attributes are not
// validated beyond quote balance inside the tag.
inline bool xml_well_formed(const std::string& doc) {
  std::vector<std::string> stack;
  size_t i = 0;
  while (i < doc.size()) {
    if (doc[i] != '<') {
      ++i;
      continue;
    }
    size_t close = doc.find('>', i);
    if (close == std::string::npos) return false;
    std::string tag = doc.substr(i + 1, close - i - 1);
    i = close + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    bool self_closing = tag.back() == '/';
    if (self_closing) tag.pop_back();
    std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
    if (name.empty()) return false;
    if (!self_closing) stack.push_back(name);
  }
  return stack.empty();
}

inline int count_occurrences(const std::string& doc, const std::string& needle) {
  int n = 0;
  for (size_t pos = doc.find(needle); pos != std::string::npos; pos = doc.find(needle, pos + 1))
    ++n;
  return n;
}

}  // namespace testutil
