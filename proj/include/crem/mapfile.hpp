#pragma once

#include <string>
#include <vector>

#include "crem/cremona.hpp"

namespace crem {

// Map-definition file:
//
//   field { modulus = "x^2+3", hint = "1.7320508i", gen = "s" }
//   map { components = ["x*z^2+y^3", "y*z^2", "z^3"] }
//   candidates { points = ["1:0:0"], curves = ["z"] }
//
// The field block is optional (defaults to Q), as is candidates. '#' starts a
// comment. Errors are ParseError with line and column.
struct MapDefinition {
    FieldPtr field;
    RationalMapP2 map;
    std::vector<ProjPoint> points;
    std::vector<HomoPoly> curves;
};

MapDefinition parse_map_definition(const std::string& text);

// "1.7320508i", "0.5-0.866i", "-2"
EmbeddingHint parse_hint(const std::string& text);

// "a:b:c" or "(a : b : c)"; entries are field constants.
ProjPoint parse_point(const std::string& text, FieldPtr f);

// phi(n), cubic_quadratic, cubic_inverse, example12_linear,
// example12_quadratic(eps), henon(p0, ..., pd, delta), bedford_kim(n, c, a...).
// Returns false if the name is not a built-in; throws ParseError on bad arguments.
bool parse_builtin_map(const std::string& text, RationalMapP2& out);

std::vector<std::string> builtin_map_names();

} // namespace crem
