#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyimage/linalg.hpp"
#include "polyimage/polyhedron.hpp"
#include "polyimage/projection.hpp"

namespace polyimage {

// Polyhedron files:   {"dim": n, "rows": [{"a": ["1", "-1/2"], "b": "3"}, ...]}
// Linear map files:   {"rows": m, "cols": n, "data": [["1", "0"], ...]}
// Certified results add "certificates": [{"row": {...},
//                     "multipliers": [{"index": k, "coeff": "1/2"}, ...]}, ...]
// All rationals are JSON strings. Parse failures throw ParseError carrying the
// offending token and its byte offset in the document.

/// Rows are kept in file order. Unknown keys are ignored.
HPolyhedron parse_polyhedron(std::string_view text);

LinMap parse_map(std::string_view text);

/// The "certificates" array of a certified result, or an empty vector when
/// the document has none. Each entry's row is returned alongside it.
std::vector<std::pair<IneqRow, Certificate>> parse_certificates(std::string_view text);

/// Comma-separated rationals, e.g. "1/2,0". The empty string is the point of
/// the zero-dimensional space.
QVector parse_point(std::string_view text);

/// Fixed layout, one row per line; byte-identical for equal inputs.
std::string format_polyhedron(const HPolyhedron& p);

std::string format_certified(const CertifiedPolyhedron& result);

}  // namespace polyimage
