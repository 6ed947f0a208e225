#include <cmath>
#include <filesystem>
#include <limits>

#include "doctest.h"
#include "mink/capacity.hpp"
#include "mink/flow.hpp"
#include "mink/polygon_io.hpp"
#include "mink/rng.hpp"
#include "mink/svg.hpp"
#include "support.hpp"

using namespace mink;

TEST_CASE("polygon JSON round-trips bitwise") {
  Rng rng(11, 1);
  for (int i = 0; i < 25; ++i) {
    Polygon2 P = testutil::random_convex_sized(rng, 3, 9);
    Polygon2 Q = polygon_from_json(polygon_to_json(P));
    REQUIRE(Q.size() == P.size());
    for (int v = 0; v < P.size(); ++v) {
      CHECK(Q.vertex(v).x == P.vertex(v).x);
      CHECK(Q.vertex(v).y == P.vertex(v).y);
    }
  }
}

TEST_CASE("malformed polygon JSON is rejected") {
  CHECK_THROWS_AS(polygon_from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_json("[1, 2, 3]"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_json("{\"vertices\": 7}"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_json("{\"vertices\": [[0, 0], [1, 0]]}"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_json("{\"vertices\": [[0, 0], [1, \"x\"], [0, 1]]}"),
                  InvalidArgument);
  CHECK_THROWS_AS(polygon_from_json("{\"vertices\": [[0, 0], [1], [0, 1]]}"), InvalidArgument);
}

TEST_CASE("body specs: bare leaves, nesting and errors") {
  std::string pent = polygon_to_json(testutil::pentagon_k());
  Body leaf = body_from_json(pent);
  CHECK(leaf.kind == Body::Kind::polygon);
  CHECK(leaf.volume == doctest::Approx(testutil::kPentArea).epsilon(1e-13));

  Body iv = body_from_json("{\"interval\": 0.75}");
  CHECK(iv.kind == Body::Kind::interval);
  CHECK(iv.halfwidth == 0.75);

  std::string combo = "{\"p\": 1, \"components\": [" + pent + ", {\"interval\": 0.5}]}";
  Body b = body_from_json(combo);
  CHECK(b.kind == Body::Kind::combo);
  CHECK(b.dim == 3);
  CHECK(b.volume == doctest::Approx(testutil::kPentArea * 1.0 / 3.0).epsilon(1e-12));

  std::string nested =
      "{\"p\": \"inf\", \"components\": [{\"interval\": 1}, " + combo + "]}";
  Body d = body_from_json(nested);
  CHECK(d.kind == Body::Kind::combo);
  CHECK(d.p == std::numeric_limits<double>::infinity());
  CHECK(d.dim == 4);
  CHECK(d.children.size() == 2);

  CHECK_THROWS_AS(body_from_json("{}"), InvalidArgument);
  CHECK_THROWS_AS(body_from_json("{\"p\": 0.5, \"components\": [{\"interval\": 1}]}"),
                  InvalidArgument);
  CHECK_THROWS_AS(body_from_json("{\"p\": \"sup\", \"components\": [{\"interval\": 1}]}"),
                  InvalidArgument);
  CHECK_THROWS_AS(body_from_json("{\"p\": 2, \"components\": []}"), InvalidArgument);
  CHECK_THROWS_AS(body_from_json("{\"interval\": \"x\"}"), InvalidArgument);
}

TEST_CASE("text files write and read back") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mink_io_test";
  fs::create_directories(dir);
  fs::path file = dir / "poly.json";
  std::string text = polygon_to_json(testutil::pentagon_t());
  write_text_file(file.string(), text);
  CHECK(read_text_file(file.string()) == text);
  Polygon2 back = polygon_from_json(read_text_file(file.string()));
  CHECK(testutil::same_polygon(back, testutil::pentagon_t(), 0.0));
  fs::remove_all(dir);

  CHECK_THROWS_AS(read_text_file((dir / "missing.json").string()), InvalidArgument);
}

TEST_CASE("svg documents are well formed with fixed path counts") {
  Polygon2 K = testutil::pentagon_k(), T = testutil::pentagon_t();

  std::string pair = svg_product_pair(K, T);
  CHECK(testutil::xml_well_formed(pair));
  CHECK(testutil::count_occurrences(pair, "<path") == 2);

  int fup = -1;
  for (int f = 0; f < T.size(); ++f)
    if (norm(T.edge_normal(f) - Vec2{0.0, 1.0}) < 1e-9) fup = f;
  Trajectory traj =
      simulate(K, T, make_flow_state(K, T, Feature::on_edge(0, 0.37), Feature::on_edge(fup, 0.4)));
  REQUIRE(traj.verdict == FlowVerdict::periodic);

  std::vector<Vec2> cycle;
  for (const FlowState& s : traj.bounces) cycle.push_back(s.q);
  std::string orbit = svg_trajectory(K, cycle);
  CHECK(testutil::xml_well_formed(orbit));
  CHECK(testutil::count_occurrences(orbit, "<path") == 2);

  Unfolding u = unfold(K, traj);
  std::string unf = svg_unfolding(u);
  CHECK(testutil::xml_well_formed(unf));
  CHECK(testutil::count_occurrences(unf, "<path") == int(u.copies.size()) + 1);

  std::vector<PolyCurve> family = {cycle_curve(traj), min_curve_exact(K, T).minimizer};
  std::string fam = svg_minimizer_family(K, family);
  CHECK(testutil::xml_well_formed(fam));
  CHECK(testutil::count_occurrences(fam, "<path") == 1 + int(family.size()));
}
