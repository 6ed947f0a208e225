#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mink/capacity.hpp"
#include "mink/flow.hpp"
#include "mink/polygon_io.hpp"
#include "mink/products.hpp"
#include "mink/svg.hpp"

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char b[20];
  std::snprintf(b, sizeof b, "%016llx", static_cast<unsigned long long>(v));
  return b;
}

std::string fmt10(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%#.10g", v);
  return b;
}

struct Ctx {
  bool json_out = false;
  std::uint64_t seed = 0;
  double eps = 1e-9;
  std::string echo;

  json inputs = json::object();
  std::vector<std::string> input_lines;

  mink::Polygon2 load_polygon(const std::string& name, const std::string& path) {
    std::string text = mink::read_text_file(path);
    std::string digest = hex64(fnv1a(text));
    inputs[name] = {{"path", path}, {"digest", digest}};
    input_lines.push_back("# " + name + ": " + path + " " + digest);
    return mink::polygon_from_json(text, eps);
  }
  mink::Body load_body(const std::string& name, const std::string& path) {
    std::string text = mink::read_text_file(path);
    std::string digest = hex64(fnv1a(text));
    inputs[name] = {{"path", path}, {"digest", digest}};
    input_lines.push_back("# " + name + ": " + path + " " + digest);
    return mink::body_from_json(text, eps);
  }

  // Text reports: "# key: value" comment lines, then the payload.  JSON
  // reports: one object; wall time is informational and varies run to run.
  void emit(const json& results, const std::vector<std::string>& payload, double wall_ms) {
    if (json_out) {
      json j;
      j["command"] = echo;
      j["inputs"] = inputs;
      j["seed"] = seed;
      j["eps"] = eps;
      j["results"] = results;
      j["wall_ms"] = wall_ms;
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << "# command: " << echo << "\n";
    for (const std::string& line : input_lines) std::cout << line << "\n";
    std::cout << "# seed: " << seed << "\n";
    char b[48];
    std::snprintf(b, sizeof b, "%.3f", wall_ms);
    std::cout << "# wall-ms: " << b << "\n";
    for (const std::string& line : payload) std::cout << line << "\n";
  }
};

json points_json(const std::vector<mink::Vec2>& pts) {
  json a = json::array();
  for (const mink::Vec2& p : pts) a.push_back({p.x, p.y});
  return a;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

mink::CapacityResult run_capacity_method(const mink::Polygon2& K, const mink::Polygon2& T,
                                         const std::string& method, int samples) {
  if (method == "grid") return mink::min_curve_grid(K, T, samples);
  return mink::min_curve_exact(K, T);
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  for (int i = 0; i < argc; ++i) ctx.echo += std::string(i ? " " : "") + argv[i];

  CLI::App app{"Minkowski billiard capacities and flows on polygon products"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", ctx.json_out, "emit a JSON report");
  app.add_option("--seed", ctx.seed, "RNG seed for randomized commands");
  app.add_option("--eps", ctx.eps, "geometric tolerance for parsed polygons");

  std::string kpath, tpath, method = "exact";
  int samples = 400;

  auto* cap = app.add_subcommand("capacity", "capacity of the product K x T");
  cap->add_option("--k", kpath, "polygon JSON for K")->required();
  cap->add_option("--t", tpath, "polygon JSON for T")->required();
  cap->add_option("--method", method, "exact or grid")
      ->check(CLI::IsMember({"exact", "grid"}));
  cap->add_option("--grid-n,--samples", samples, "grid samples per edge");
  cap->callback([&] {
    mink::Polygon2 K = ctx.load_polygon("k", kpath), T = ctx.load_polygon("t", tpath);
    Timer timer;
    mink::CapacityResult r = run_capacity_method(K, T, method, samples);
    double sysv = r.value * r.value / (2.0 * mink::area(K) * mink::area(T));
    double ms = timer.ms();
    json res = {{"capacity", r.value},
                {"systolic_ratio", sysv},
                {"method", r.method},
                {"certified", r.certified},
                {"minimizer", points_json(r.minimizer.points)},
                {"momenta", points_json(r.momenta)}};
    ctx.emit(res,
             {"# method: " + r.method, std::string("# certified: ") + (r.certified ? "yes" : "no"),
              fmt10(r.value)},
             ms);
  });

  auto* sys = app.add_subcommand("systole", "systolic ratio of the product K x T");
  sys->add_option("--k", kpath, "polygon JSON for K")->required();
  sys->add_option("--t", tpath, "polygon JSON for T")->required();
  sys->add_option("--method", method, "exact or grid")
      ->check(CLI::IsMember({"exact", "grid"}));
  sys->add_option("--grid-n,--samples", samples, "grid samples per edge");
  sys->callback([&] {
    mink::Polygon2 K = ctx.load_polygon("k", kpath), T = ctx.load_polygon("t", tpath);
    Timer timer;
    mink::CapacityResult r = run_capacity_method(K, T, method, samples);
    double value = r.value * r.value / (2.0 * mink::area(K) * mink::area(T));
    double ms = timer.ms();
    json res = {{"systolic_ratio", value},
                {"capacity", r.value},
                {"method", r.method},
                {"certified", r.certified},
                {"minimizer", points_json(r.minimizer.points)},
                {"momenta", points_json(r.momenta)}};
    ctx.emit(res, {"# method: " + r.method, fmt10(value)}, ms);
  });

  int edge = 0, pedge = 0, max_bounces = 10000, family_count = 10, family_vertex = 0,
      family_edge = 2;
  double lam = 0.25, pmu = 0.25;
  std::string svg_path, svg_kind = "trajectory", out_path, kind;

  std::string q0_text, dir_text;
  auto parse_pair = [](const std::string& text, const char* what) {
    double a = 0.0, b = 0.0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &a, &b, &tail) != 2)
      throw mink::InvalidArgument(std::string(what) + " must be two comma-separated numbers");
    return mink::Vec2{a, b};
  };

  auto* sim = app.add_subcommand("simulate", "run the billiard flow from one start");
  sim->add_option("--k", kpath, "polygon JSON for K")->required();
  sim->add_option("--t", tpath, "polygon JSON for T")->required();
  auto* sim_edge = sim->add_option("--edge", edge, "start edge index on K");
  auto* sim_lam = sim->add_option("--lam", lam, "start edge parameter in (0,1)");
  auto* sim_pedge = sim->add_option("--pedge", pedge, "momentum edge index on T");
  auto* sim_pmu = sim->add_option("--pmu", pmu, "momentum edge parameter in (0,1)");
  sim->add_option("--q0", q0_text, "start point x,y on the boundary of K")
      ->excludes(sim_edge)
      ->excludes(sim_lam);
  sim->add_option("--dir", dir_text,
                  "initial direction dx,dy; picks the T edge whose outer normal "
                  "matches it best, momentum at the edge midpoint")
      ->excludes(sim_pedge)
      ->excludes(sim_pmu);
  sim->add_option("--max-bounces", max_bounces, "bounce budget");
  sim->add_option("--svg", svg_path, "write an orbit figure to this file");
  sim->add_option("--svg-kind", svg_kind, "trajectory or unfolding")
      ->check(CLI::IsMember({"trajectory", "unfolding"}));
  sim->callback([&] {
    mink::Polygon2 K = ctx.load_polygon("k", kpath), T = ctx.load_polygon("t", tpath);
    mink::Feature q_feat = mink::Feature::on_edge(K.wrap(edge), lam);
    if (!q0_text.empty()) {
      mink::Vec2 q0 = parse_pair(q0_text, "--q0");
      std::optional<mink::Feature> f = mink::locate_boundary(K, q0, K.tol());
      if (!f) throw mink::NotOnBoundary("--q0 does not lie on the boundary of K");
      q_feat = *f;
    } else if (!(lam > 0 && lam < 1)) {
      throw mink::InvalidArgument("edge parameters must lie in (0,1)");
    }
    mink::Feature p_feat = mink::Feature::on_edge(T.wrap(pedge), pmu);
    if (!dir_text.empty()) {
      mink::Vec2 dir = parse_pair(dir_text, "--dir");
      if (norm(dir) == 0.0) throw mink::InvalidArgument("--dir must be nonzero");
      int best_e = 0;
      double best_dot = -std::numeric_limits<double>::infinity();
      for (int e = 0; e < T.size(); ++e) {
        double d = dot(T.edge_normal(e), dir);
        if (d > best_dot) {
          best_dot = d;
          best_e = e;
        }
      }
      p_feat = mink::Feature::on_edge(best_e, 0.5);
    } else if (!(pmu > 0 && pmu < 1)) {
      throw mink::InvalidArgument("edge parameters must lie in (0,1)");
    }
    Timer timer;
    mink::FlowState start = mink::make_flow_state(K, T, q_feat, p_feat);
    mink::Trajectory traj = mink::simulate(K, T, start, max_bounces);
    double ms = timer.ms();
    const char* verdict = traj.verdict == mink::FlowVerdict::periodic    ? "periodic"
                          : traj.verdict == mink::FlowVerdict::corner_hit ? "corner-hit"
                                                                          : "open";
    json res = {{"verdict", verdict},
                {"period", traj.period},
                {"tlength", traj.tlength},
                {"action", traj.action},
                {"bounces", int(traj.bounces.size())},
                {"fail_step", traj.fail_step}};
    std::vector<std::string> payload = {std::string("verdict ") + verdict};
    if (traj.verdict == mink::FlowVerdict::periodic) {
      payload.push_back("period " + std::to_string(traj.period));
      payload.push_back("tlength " + fmt10(traj.tlength));
      payload.push_back("action " + fmt10(traj.action));
    } else if (traj.verdict == mink::FlowVerdict::corner_hit) {
      payload.push_back("fail-step " + std::to_string(traj.fail_step));
    }
    if (!svg_path.empty()) {
      if (traj.verdict != mink::FlowVerdict::periodic)
        throw mink::InvalidArgument("orbit figures need a periodic trajectory");
      std::string doc = svg_kind == "unfolding"
                            ? mink::svg_unfolding(mink::unfold(K, traj))
                            : mink::svg_trajectory(K, mink::cycle_curve(traj).points);
      mink::write_text_file(svg_path, doc);
      res["svg"] = svg_path;
      payload.push_back("# wrote " + svg_path);
    }
    ctx.emit(res, payload, ms);
  });

  int starts = 200;
  bool include_midpoints = false;
  auto* cls = app.add_subcommand("classes", "length classes of random flow orbits");
  cls->add_option("--k", kpath, "polygon JSON for K")->required();
  cls->add_option("--t", tpath, "polygon JSON for T")->required();
  std::string cls_out;
  cls->add_option("--starts", starts, "number of sampled starts");
  cls->add_flag("--include-midpoints", include_midpoints, "allow edge-midpoint starts");
  cls->add_option("--out", cls_out, "also write the class table as CSV");
  cls->callback([&] {
    mink::Polygon2 K = ctx.load_polygon("k", kpath), T = ctx.load_polygon("t", tpath);
    Timer timer;
    mink::ClassTable table = mink::length_classes(K, T, starts, ctx.seed, include_midpoints);
    double ms = timer.ms();
    json rows = json::array();
    std::vector<std::string> payload = {
        "# corner-hits: " + std::to_string(table.corner_hits),
        "# open: " + std::to_string(table.open_orbits),
        "# sampled: " + std::to_string(table.sampled), "period,tlength,count"};
    std::string csv = "period,tlength,count\n";
    for (const mink::LengthClass& c : table.classes) {
      rows.push_back({{"period", c.period}, {"tlength", c.tlength}, {"count", c.count}});
      std::string row = std::to_string(c.period) + "," + fmt10(c.tlength) + "," +
                        std::to_string(c.count);
      payload.push_back(row);
      csv += row + "\n";
    }
    if (!cls_out.empty()) {
      mink::write_text_file(cls_out, csv);
      payload.push_back("# wrote " + cls_out);
    }
    json res = {{"classes", rows},
                {"corner_hits", table.corner_hits},
                {"open", table.open_orbits},
                {"sampled", table.sampled}};
    ctx.emit(res, payload, ms);
  });

  std::string lkpath, ltpath, ckpath, ctpath;
  int steps = 20;
  auto* swp = app.add_subcommand("sweep", "ratio along the interpolation between two pairs");
  swp->add_option("--lk", lkpath, "K at lambda=1")->required();
  swp->add_option("--lt", ltpath, "T at lambda=1")->required();
  swp->add_option("--ck", ckpath, "K at lambda=0")->required();
  swp->add_option("--ct", ctpath, "T at lambda=0")->required();
  std::string swp_out;
  swp->add_option("--steps", steps, "grid rows");
  swp->add_option("--out", swp_out, "also write the lambda,sys table as CSV");
  swp->callback([&] {
    mink::Polygon2 LK = ctx.load_polygon("lk", lkpath), LT = ctx.load_polygon("lt", ltpath);
    mink::Polygon2 CK = ctx.load_polygon("ck", ckpath), CT = ctx.load_polygon("ct", ctpath);
    Timer timer;
    mink::SweepResult r = mink::interpolation_sweep(LK, LT, CK, CT, steps);
    double ms = timer.ms();
    json rows = json::array();
    std::vector<std::string> payload = {
        "# root-lambda: " + fmt10(r.root_lambda), "# root-sys: " + fmt10(r.root_sys),
        "# bracket: [" + fmt10(r.bracket_lo) + ", " + fmt10(r.bracket_hi) + "]", "lambda,sys"};
    std::string csv = "lambda,sys\n";
    for (const mink::SweepRow& row : r.rows) {
      rows.push_back({{"lambda", row.lambda}, {"sys", row.sys}});
      std::string line = fmt10(row.lambda) + "," + fmt10(row.sys);
      payload.push_back(line);
      csv += line + "\n";
    }
    if (!swp_out.empty()) {
      mink::write_text_file(swp_out, csv);
      payload.push_back("# wrote " + swp_out);
    }
    json res = {{"rows", rows},
                {"root_lambda", r.root_lambda},
                {"root_sys", r.root_sys},
                {"bracket_lo", r.bracket_lo},
                {"bracket_hi", r.bracket_hi},
                {"bracket_lo_sys", r.bracket_lo_sys},
                {"bracket_hi_sys", r.bracket_hi_sys}};
    ctx.emit(res, payload, ms);
  });

  auto* prod = app.add_subcommand("products", "p-product constructions");
  prod->require_subcommand(1);

  int fm = 1, fn = 1, kn = 2;
  std::string pexp = "1", spec_path;
  long long mc_samples = 1000000;

  auto* fac = prod->add_subcommand("factor", "volume factor of an m+n dimensional p-product");
  fac->add_option("m", fm, "first dimension")->required();
  fac->add_option("n", fn, "second dimension")->required();
  fac->add_option("p", pexp, "exponent, number or inf")->required();
  fac->callback([&] {
    double p = pexp == "inf" ? std::numeric_limits<double>::infinity() : [&] {
      try {
        return std::stod(pexp);
      } catch (const std::exception&) {
        throw mink::InvalidArgument("exponent must be a number or inf");
      }
    }();
    Timer timer;
    double f = mink::volume_factor(fm, fn, p);
    ctx.emit({{"factor", f}}, {fmt10(f)}, timer.ms());
  });

  auto* kt = prod->add_subcommand("kntn", "pentagon product family K_n, T_n");
  kt->add_option("--n", kn, "factor dimension, at least 2")->required();
  kt->callback([&] {
    Timer timer;
    mink::KnTn r = mink::construct_KnTn(kn);
    double sysv = mink::sys_from_volumes(r);
    double ms = timer.ms();
    json res = {{"n", r.n},
                {"l", r.l},
                {"capacity", r.capacity},
                {"capacity_asserted", r.capacity_asserted},
                {"predicted_sys", r.predicted_sys},
                {"vol_k", r.K.volume},
                {"vol_t", r.T.volume},
                {"sys_from_volumes", sysv}};
    ctx.emit(res,
             {"n " + std::to_string(r.n), "l " + fmt10(r.l), "capacity " + fmt10(r.capacity),
              "capacity-asserted yes", "predicted-sys " + fmt10(r.predicted_sys),
              "vol-k " + fmt10(r.K.volume), "vol-t " + fmt10(r.T.volume),
              "sys-from-volumes " + fmt10(sysv)},
             ms);
  });

  auto* mcv = prod->add_subcommand("mcvol", "Monte-Carlo volume of a product spec");
  mcv->add_option("--spec", spec_path, "product spec JSON")->required();
  mcv->add_option("--samples", mc_samples, "sample count, at least 1e4");
  mcv->callback([&] {
    mink::Body body = ctx.load_body("spec", spec_path);
    Timer timer;
    mink::McVolume r = mink::mc_volume(body, mc_samples, ctx.seed);
    double ms = timer.ms();
    json res = {{"estimate", r.estimate},
                {"ci99", r.ci_halfwidth},
                {"box_volume", r.box_volume},
                {"hits", r.hits},
                {"samples", r.samples},
                {"analytic_volume", body.volume}};
    ctx.emit(res,
             {"estimate " + fmt10(r.estimate), "ci99 " + fmt10(r.ci_halfwidth),
              "analytic " + fmt10(body.volume)},
             ms);
  });

  auto* fig = app.add_subcommand("figure", "emit an SVG figure");
  fig->add_option("--kind", kind, "product-pair, trajectory, unfolding or minimizer-family")
      ->required()
      ->check(CLI::IsMember({"product-pair", "trajectory", "unfolding", "minimizer-family"}));
  fig->add_option("--k", kpath, "polygon JSON for K")->required();
  fig->add_option("--t", tpath, "polygon JSON for T")->required();
  fig->add_option("--out", out_path, "output SVG path")->required();
  fig->add_option("--edge", edge, "orbit start edge on K");
  fig->add_option("--lam", lam, "orbit start parameter");
  fig->add_option("--pedge", pedge, "orbit momentum edge on T");
  fig->add_option("--pmu", pmu, "orbit momentum parameter");
  fig->add_option("--family-vertex", family_vertex, "family vertex index");
  fig->add_option("--family-edge", family_edge, "family edge index");
  fig->add_option("--family-count", family_count, "family member count");
  fig->callback([&] {
    mink::Polygon2 K = ctx.load_polygon("k", kpath), T = ctx.load_polygon("t", tpath);
    Timer timer;
    std::string doc;
    if (kind == "product-pair") {
      doc = mink::svg_product_pair(K, T);
    } else if (kind == "minimizer-family") {
      if (family_count < 2) throw mink::InvalidArgument("family needs at least 2 members");
      std::vector<mink::PolyCurve> fam;
      for (int j = 0; j < family_count; ++j) {
        double t = double(j) / (family_count - 1);
        fam.push_back(mink::curve_from_features(
            K, {mink::Feature::at_vertex(K.wrap(family_vertex)),
                mink::Feature::on_edge(K.wrap(family_edge), t)}));
      }
      doc = mink::svg_minimizer_family(K, fam);
    } else {
      mink::FlowState start =
          mink::make_flow_state(K, T, mink::Feature::on_edge(K.wrap(edge), lam),
                                mink::Feature::on_edge(T.wrap(pedge), pmu));
      mink::Trajectory traj = mink::simulate(K, T, start, max_bounces);
      if (traj.verdict != mink::FlowVerdict::periodic)
        throw mink::InvalidArgument("orbit figures need a periodic trajectory");
      doc = kind == "unfolding" ? mink::svg_unfolding(mink::unfold(K, traj))
                                : mink::svg_trajectory(K, mink::cycle_curve(traj).points);
    }
    mink::write_text_file(out_path, doc);
    double ms = timer.ms();
    int paths = 0;
    for (size_t pos = doc.find("<path"); pos != std::string::npos;
         pos = doc.find("<path", pos + 1))
      ++paths;
    ctx.emit({{"out", out_path}, {"kind", kind}, {"paths", paths}},
             {"# wrote " + out_path, "paths " + std::to_string(paths)}, ms);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const mink::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const mink::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
