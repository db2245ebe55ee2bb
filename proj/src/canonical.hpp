#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "polyimage/polyhedron.hpp"

namespace polyimage::detail {

struct CanonicalRow {
  IneqRow row;
  std::size_t source;  // index into the input rows
  Rational scale;      // row = scale * input[source]
};

/// Normalizes, drops vacuous rows, sorts, and merges exact duplicates. Among
/// duplicates the row with the smallest `preference` (then lowest index) wins.
std::vector<CanonicalRow> canonicalize(
    std::span<const IneqRow> rows,
    const std::function<std::size_t(std::size_t)>& preference = {});

}  // namespace polyimage::detail
