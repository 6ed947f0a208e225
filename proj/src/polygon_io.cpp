#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "mink/polygon_io.hpp"

namespace mink {

namespace {

using nlohmann::json;

json parse_checked(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidArgument("malformed JSON");
  return j;
}

std::vector<Vec2> vertices_of(const json& jp) {
  if (!jp.is_object() || !jp.contains("vertices") || !jp["vertices"].is_array())
    throw InvalidArgument("polygon JSON needs a \"vertices\" array");
  std::vector<Vec2> vs;
  for (const json& row : jp["vertices"]) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
      throw InvalidArgument("polygon vertex must be a pair of numbers");
    vs.push_back({row[0].get<double>(), row[1].get<double>()});
  }
  return vs;
}

Body body_of(const json& j, double eps) {
  if (!j.is_object()) throw InvalidArgument("body spec must be a JSON object");
  if (j.contains("polygon")) return polygon_body(Polygon2(vertices_of(j["polygon"]), eps));
  if (j.contains("interval")) {
    if (!j["interval"].is_number()) throw InvalidArgument("interval halfwidth must be a number");
    return interval_body(j["interval"].get<double>());
  }
  if (j.contains("vertices")) return polygon_body(Polygon2(vertices_of(j), eps));
  if (j.contains("p") && j.contains("components")) {
    double p;
    if (j["p"].is_string()) {
      if (j["p"].get<std::string>() != "inf") throw InvalidArgument("exponent must be a number or \"inf\"");
      p = std::numeric_limits<double>::infinity();
    } else if (j["p"].is_number()) {
      p = j["p"].get<double>();
    } else {
      throw InvalidArgument("exponent must be a number or \"inf\"");
    }
    if (!j["components"].is_array() || j["components"].empty())
      throw InvalidArgument("components must be a non-empty array");
    std::vector<Body> kids;
    for (const json& c : j["components"]) kids.push_back(body_of(c, eps));
    return combo_body(p, std::move(kids));
  }
  throw InvalidArgument("unrecognized body spec");
}

}  // namespace

Polygon2 polygon_from_json(const std::string& text, double eps) {
  return Polygon2(vertices_of(parse_checked(text)), eps);
}

std::string polygon_to_json(const Polygon2& P) {
  std::string out = "{\"vertices\": [";
  char buf[80];
  for (int i = 0; i < P.size(); ++i) {
    Vec2 v = P.vertex(i);
    std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g]", i ? ", " : "", v.x, v.y);
    out += buf;
  }
  out += "]}\n";
  return out;
}

Body body_from_json(const std::string& text, double eps) {
  return body_of(parse_checked(text), eps);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << text;
}

}  // namespace mink
