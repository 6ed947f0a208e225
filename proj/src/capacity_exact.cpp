#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "mink/capacity.hpp"

namespace mink {

namespace {

constexpr double kTieRel = 1e-12;

// The minimum of the piecewise-linear length over a combinatorial class
// (fixed boundary features, free edge parameters) is attained at a vertex of
// the arrangement cut out by the parameter box and the support-sector lines
// of the segment directions.  We enumerate those arrangement vertices.
class ExactSearch {
 public:
  ExactSearch(const Polygon2& K, const Polygon2& T) : K_(K), T_(T) {
    normal_angle_.resize(K.size());
    for (int i = 0; i < K.size(); ++i)
      normal_angle_[i] = std::atan2(K.edge_normal(i).y, K.edge_normal(i).x);
  }

  CapacityResult run() {
    int m = K_.size();
    // 2-point classes: vertex pairs, vertex-edge, edge-edge.
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j)
        minimize_class({Feature::at_vertex(i), Feature::at_vertex(j)});
      for (int e = 0; e < m; ++e) {
        if (e == i || K_.wrap(e + 1) == i) continue;  // point would sit next to the vertex
        minimize_class({Feature::at_vertex(i), Feature::on_edge(e, 0.5)});
      }
      for (int e = i + 1; e < m; ++e)
        minimize_class({Feature::on_edge(i, 0.5), Feature::on_edge(e, 0.5)});
    }
    // 3-point classes over all feature triples, both traversal orders.
    int nf = 2 * m;
    auto feat = [&](int idx) {
      return idx % 2 == 0 ? Feature::at_vertex(idx / 2) : Feature::on_edge(idx / 2, 0.5);
    };
    for (int a = 0; a < nf; ++a) {
      for (int b = a + 1; b < nf; ++b) {
        for (int c = b + 1; c < nf; ++c) {
          minimize_class({feat(a), feat(b), feat(c)});
          minimize_class({feat(a), feat(c), feat(b)});
        }
      }
    }
    if (!has_best_) throw InternalError("no non-translatable cycle found");

    CapacityResult res;
    res.method = "exact";
    res.minimizer = curve_from_features(K_, best_feats_);
    res.value = best_value_;
    BilliardCheck chk = verify_billiard(K_, T_, res.minimizer, 10.0 * K_.tol());
    res.certified = chk.certified;
    res.momenta = chk.momenta;
    return res;
  }

 private:
  bool feasible(const std::vector<Feature>& feats) const {
    std::array<double, 6> ang{};
    int n = 0;
    for (const Feature& f : feats) {
      if (f.kind == Feature::Kind::edge) {
        ang[n++] = normal_angle_[f.index];
      } else {
        ang[n++] = normal_angle_[K_.wrap(f.index - 1)];
        ang[n++] = normal_angle_[f.index];
      }
    }
    std::sort(ang.begin(), ang.begin() + n);
    double max_gap = ang[0] + 2.0 * std::numbers::pi - ang[n - 1];
    for (int i = 1; i < n; ++i) max_gap = std::max(max_gap, ang[i] - ang[i - 1]);
    return max_gap <= std::numbers::pi + 1e-9;
  }

  void consider(std::vector<Feature> feats) {
    // Snap near-vertex edge parameters to the vertex feature.
    for (Feature& f : feats) {
      if (f.kind != Feature::Kind::edge) continue;
      double len = norm(K_.edge_vec(f.index));
      if (f.lam * len <= K_.tol()) {
        f = Feature::at_vertex(f.index);
      } else if ((1.0 - f.lam) * len <= K_.tol()) {
        f = Feature::at_vertex(K_.wrap(f.index + 1));
      }
    }
    PolyCurve curve = curve_from_features(K_, feats);
    size_t n = curve.points.size();
    for (size_t i = 0; i < n; ++i) {
      if (dist(curve.points[i], curve.points[(i + 1) % n]) <= K_.tol()) return;
    }
    double value = tlength(T_, curve);
    if (has_best_ && value > best_value_ * (1.0 + kTieRel)) return;
    std::vector<double> key = curve_tie_key(curve);
    if (!has_best_ || value < best_value_ * (1.0 - kTieRel) || tie_key_less(key, best_key_)) {
      has_best_ = true;
      best_value_ = value;
      best_key_ = std::move(key);
      best_feats_ = std::move(feats);
    }
  }

  void minimize_class(std::vector<Feature> feats) {
    if (!feasible(feats)) return;
    int n = int(feats.size());
    std::vector<int> slot(n, -1);
    int nfree = 0;
    std::array<Vec2, 3> base{}, evec{};
    for (int i = 0; i < n; ++i) {
      base[i] = K_.vertex(feats[i].index);
      if (feats[i].kind == Feature::Kind::edge) {
        evec[i] = K_.edge_vec(feats[i].index);
        slot[i] = nfree++;
      }
    }
    struct Seg {
      Vec2 c;
      std::array<Vec2, 3> a{};
    };
    std::array<Seg, 3> seg{};
    for (int s = 0; s < n; ++s) {
      int i = s, j = (s + 1) % n;
      seg[s].c = base[j] - base[i];
      if (slot[j] >= 0) seg[s].a[slot[j]] += evec[j];
      if (slot[i] >= 0) seg[s].a[slot[i]] -= evec[i];
    }

    if (nfree == 0) {
      consider(feats);
      return;
    }

    int ncorner = 1 << nfree;
    auto dir_at = [&](const Seg& sg, const std::array<double, 3>& lam) {
      Vec2 d = sg.c;
      for (int j = 0; j < nfree; ++j) d += lam[j] * sg.a[j];
      return d;
    };
    std::array<std::array<Vec2, 8>, 3> corner_dir{};
    for (int s = 0; s < n; ++s) {
      for (int cn = 0; cn < ncorner; ++cn) {
        std::array<double, 3> lam{};
        for (int j = 0; j < nfree; ++j) lam[j] = (cn >> j) & 1 ? 1.0 : 0.0;
        corner_dir[s][cn] = dir_at(seg[s], lam);
      }
    }

    // Cheap lower bound: replace each support term by a fixed linear one
    // (maximizer of the box-center direction) and minimize over the box.
    if (has_best_) {
      double lb = 0.0;
      std::array<double, 3> coef{};
      for (int s = 0; s < n; ++s) {
        std::array<double, 3> half{};
        half.fill(0.5);
        Vec2 dc = dir_at(seg[s], half);
        int w = 0;
        double bestdot = dot(T_.vertex(0), dc);
        for (int t = 1; t < T_.size(); ++t) {
          double d = dot(T_.vertex(t), dc);
          if (d > bestdot) {
            bestdot = d;
            w = t;
          }
        }
        Vec2 wv = T_.vertex(w);
        lb += dot(wv, seg[s].c);
        for (int j = 0; j < nfree; ++j) coef[j] += dot(wv, seg[s].a[j]);
      }
      for (int j = 0; j < nfree; ++j) lb += std::min(0.0, coef[j]);
      if (lb > best_value_ * (1.0 + kTieRel)) return;
    }

    struct Con {
      std::array<double, 3> a{};
      double b = 0.0;
    };
    std::vector<Con> cons;
    for (int j = 0; j < nfree; ++j) {
      Con lo{}, hi{};
      lo.a[j] = 1.0;
      lo.b = 0.0;
      hi.a[j] = 1.0;
      hi.b = 1.0;
      cons.push_back(lo);
      cons.push_back(hi);
    }
    for (int s = 0; s < n; ++s) {
      double reach = norm(seg[s].c);
      for (int j = 0; j < nfree; ++j) reach += norm(seg[s].a[j]);
      for (int t = 0; t < T_.size(); ++t) {
        Vec2 dw = T_.vertex(t) - T_.vertex(t + 1);
        double thr = 1e-12 * reach * norm(dw);
        bool pos = false, neg = false, nearz = false;
        for (int cn = 0; cn < ncorner; ++cn) {
          double v = dot(corner_dir[s][cn], dw);
          if (v > thr) {
            pos = true;
          } else if (v < -thr) {
            neg = true;
          } else {
            nearz = true;
          }
        }
        if (!((pos && neg) || nearz)) continue;  // sector line misses the box
        Con c{};
        for (int j = 0; j < nfree; ++j) c.a[j] = dot(seg[s].a[j], dw);
        c.b = -dot(seg[s].c, dw);
        cons.push_back(c);
      }
    }

    auto try_candidate = [&](const std::array<double, 3>& lam) {
      std::vector<Feature> fs = feats;
      for (int i = 0; i < n; ++i) {
        if (slot[i] >= 0) {
          double l = lam[slot[i]];
          if (l < -1e-9 || l > 1.0 + 1e-9) return;
          fs[i].lam = std::clamp(l, 0.0, 1.0);
        }
      }
      consider(std::move(fs));
    };

    int nc = int(cons.size());
    std::array<double, 3> lam{};
    if (nfree == 1) {
      for (int i = 0; i < nc; ++i) {
        if (std::abs(cons[i].a[0]) < 1e-14) continue;
        lam[0] = cons[i].b / cons[i].a[0];
        try_candidate(lam);
      }
    } else if (nfree == 2) {
      for (int i = 0; i < nc; ++i) {
        for (int j = i + 1; j < nc; ++j) {
          const Con &p = cons[i], &q = cons[j];
          double det = p.a[0] * q.a[1] - p.a[1] * q.a[0];
          double sc = std::max({std::abs(p.a[0]), std::abs(p.a[1]), 1e-300}) *
                      std::max({std::abs(q.a[0]), std::abs(q.a[1]), 1e-300});
          if (std::abs(det) <= 1e-12 * sc) continue;
          lam[0] = (p.b * q.a[1] - p.a[1] * q.b) / det;
          lam[1] = (p.a[0] * q.b - p.b * q.a[0]) / det;
          try_candidate(lam);
        }
      }
    } else {
      for (int i = 0; i < nc; ++i) {
        for (int j = i + 1; j < nc; ++j) {
          for (int k = j + 1; k < nc; ++k) {
            const Con &p = cons[i], &q = cons[j], &r = cons[k];
            double det = p.a[0] * (q.a[1] * r.a[2] - q.a[2] * r.a[1]) -
                         p.a[1] * (q.a[0] * r.a[2] - q.a[2] * r.a[0]) +
                         p.a[2] * (q.a[0] * r.a[1] - q.a[1] * r.a[0]);
            auto rn = [](const Con& c) {
              return std::max({std::abs(c.a[0]), std::abs(c.a[1]), std::abs(c.a[2]), 1e-300});
            };
            if (std::abs(det) <= 1e-12 * rn(p) * rn(q) * rn(r)) continue;
            double d0 = p.b * (q.a[1] * r.a[2] - q.a[2] * r.a[1]) -
                        p.a[1] * (q.b * r.a[2] - q.a[2] * r.b) +
                        p.a[2] * (q.b * r.a[1] - q.a[1] * r.b);
            double d1 = p.a[0] * (q.b * r.a[2] - q.a[2] * r.b) -
                        p.b * (q.a[0] * r.a[2] - q.a[2] * r.a[0]) +
                        p.a[2] * (q.a[0] * r.b - q.b * r.a[0]);
            double d2 = p.a[0] * (q.a[1] * r.b - q.b * r.a[1]) -
                        p.a[1] * (q.a[0] * r.b - q.b * r.a[0]) +
                        p.b * (q.a[0] * r.a[1] - q.a[1] * r.a[0]);
            lam = {d0 / det, d1 / det, d2 / det};
            try_candidate(lam);
          }
        }
      }
    }
  }

  const Polygon2& K_;
  const Polygon2& T_;
  std::vector<double> normal_angle_;
  bool has_best_ = false;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_key_;
  std::vector<Feature> best_feats_;
};

}  // namespace

CapacityResult min_curve_exact(const Polygon2& K, const Polygon2& T) {
  if (area(K) <= K.tol() * K.tol()) throw InvalidBody("K is degenerate");
  if (!T.origin_interior()) throw InvalidBody("T needs the origin strictly inside");
  return ExactSearch(K, T).run();
}

double ehz_capacity(const Polygon2& K, const Polygon2& T) { return min_curve_exact(K, T).value; }

double systolic_ratio(const Polygon2& K, const Polygon2& T) {
  double c = ehz_capacity(K, T);
  return c * c / (2.0 * area(K) * area(T));
}

}  // namespace mink
