#pragma once

#include <string>

#include "mink/polygon.hpp"
#include "mink/products.hpp"

namespace mink {

// {"vertices": [[x, y], ...]}; malformed input raises InvalidArgument.
Polygon2 polygon_from_json(const std::string& text, double eps = 1e-9);
// 17 significant digits, enough to round-trip doubles exactly.
std::string polygon_to_json(const Polygon2& P);

// Product body spec: {"p": number|"inf", "components": [{"polygon": {...}} |
// {"interval": l} | nested spec, ...]}, or a bare polygon/interval object.
Body body_from_json(const std::string& text, double eps = 1e-9);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mink
