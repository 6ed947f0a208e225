#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mink/products.hpp"
#include "mink/rng.hpp"

namespace mink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile

}  // namespace

Body polygon_body(const Polygon2& P) {
  Body b;
  b.kind = Body::Kind::polygon;
  b.dim = 2;
  b.volume = area(P);
  b.poly = P;
  double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
  for (const Vec2& v : P.vertices()) {
    xlo = std::min(xlo, v.x);
    xhi = std::max(xhi, v.x);
    ylo = std::min(ylo, v.y);
    yhi = std::max(yhi, v.y);
  }
  b.bbox = {{xlo, xhi}, {ylo, yhi}};
  return b;
}

Body interval_body(double halfwidth) {
  if (!(halfwidth > 0)) throw InvalidArgument("interval halfwidth must be positive");
  Body b;
  b.kind = Body::Kind::interval;
  b.dim = 1;
  b.volume = 2.0 * halfwidth;
  b.halfwidth = halfwidth;
  b.bbox = {{-halfwidth, halfwidth}};
  return b;
}

Body combo_body(double p, std::vector<Body> children) {
  if (!(p >= 1.0)) throw InvalidArgument("combination exponent must be at least 1");
  if (children.empty()) throw InvalidArgument("combination needs at least one component");
  Body b;
  b.kind = Body::Kind::combo;
  b.p = p;
  b.dim = 0;
  b.volume = 1.0;
  for (const Body& c : children) {
    if (b.dim > 0) b.volume *= volume_factor(b.dim, c.dim, p);
    b.volume *= c.volume;
    b.dim += c.dim;
    b.bbox.insert(b.bbox.end(), c.bbox.begin(), c.bbox.end());
  }
  b.children = std::move(children);
  return b;
}

double body_gauge(const Body& b, const std::vector<double>& x) {
  if (int(x.size()) != b.dim) throw InvalidArgument("point dimension mismatch");
  switch (b.kind) {
    case Body::Kind::polygon:
      return gauge(*b.poly, {x[0], x[1]});
    case Body::Kind::interval:
      return std::abs(x[0]) / b.halfwidth;
    case Body::Kind::combo: {
      double acc = 0.0;
      size_t off = 0;
      for (const Body& c : b.children) {
        std::vector<double> sub(x.begin() + off, x.begin() + off + c.dim);
        double g = body_gauge(c, sub);
        acc = b.p == kInf ? std::max(acc, g) : acc + std::pow(g, b.p);
        off += c.dim;
      }
      return b.p == kInf ? acc : std::pow(acc, 1.0 / b.p);
    }
  }
  throw InternalError("unreachable body kind");
}

double volume_factor(int m, int n, double p) {
  if (m < 1 || n < 1) throw InvalidArgument("dimensions must be at least 1");
  if (!(p >= 1.0)) throw InvalidArgument("combination exponent must be at least 1");
  if (p == kInf) return 1.0;
  return std::tgamma(1.0 + m / p) * std::tgamma(1.0 + n / p) / std::tgamma(1.0 + (m + n) / p);
}

double sys_product2(double sys_x, double sys_y, double cap_x, double cap_y) {
  if (std::abs(cap_x - cap_y) > 1e-9 * std::max(cap_x, cap_y))
    throw PreconditionViolated("2-product requires equal capacities");
  return sys_x * sys_y;
}

double sys_product_1_inf(double sys1, double sys2, double cap1, double cap2) {
  if (std::abs(cap1 - cap2) > 1e-9 * std::max(cap1, cap2))
    throw PreconditionViolated("1/inf product requires equal capacities");
  return sys1 * sys2;
}

KnTn construct_KnTn(int n) {
  if (n < 2) throw InvalidArgument("construction needs n >= 2");
  KnTn kt;
  kt.n = n;
  double c = 2.0 * std::cos(std::numbers::pi / 10.0) * (1.0 + std::cos(std::numbers::pi / 5.0));
  kt.capacity = c;
  kt.l = std::sqrt(c) / 2.0;
  Polygon2 K = regular_polygon(5, 1.0, 0.0);
  Polygon2 T = regular_polygon(5, 1.0, -std::numbers::pi / 2.0);
  int k = n / 2;
  std::vector<Body> kc, tc;
  for (int i = 0; i < k; ++i) {
    kc.push_back(polygon_body(K));
    tc.push_back(polygon_body(T));
  }
  if (n % 2 == 1) {
    kc.push_back(interval_body(kt.l));
    tc.push_back(interval_body(kt.l));
  }
  kt.K = kc.size() == 1 ? kc[0] : combo_body(1.0, std::move(kc));
  kt.T = tc.size() == 1 ? tc[0] : combo_body(kInf, std::move(tc));
  kt.predicted_sys = std::pow((std::sqrt(5.0) + 3.0) / 5.0, k);
  return kt;
}

double sys_from_volumes(const KnTn& kt) {
  double fact = 1.0;
  for (int i = 2; i <= kt.n; ++i) fact *= i;
  return std::pow(kt.capacity, kt.n) / (fact * kt.K.volume * kt.T.volume);
}

McVolume mc_volume(const Body& b, long long samples, std::uint64_t seed) {
  if (samples < 10000) throw InvalidArgument("need at least 1e4 samples");
  McVolume out;
  out.samples = samples;
  out.box_volume = 1.0;
  for (auto [lo, hi] : b.bbox) out.box_volume *= hi - lo;
  Rng rng(seed);
  std::vector<double> x(b.dim);
  for (long long s = 0; s < samples; ++s) {
    for (int i = 0; i < b.dim; ++i) x[i] = rng.uniform(b.bbox[i].first, b.bbox[i].second);
    if (body_gauge(b, x) <= 1.0) ++out.hits;
  }
  double phat = double(out.hits) / double(samples);
  out.estimate = phat * out.box_volume;
  out.ci_halfwidth = kZ99 * out.box_volume * std::sqrt(phat * (1.0 - phat) / double(samples));
  return out;
}

}  // namespace mink
