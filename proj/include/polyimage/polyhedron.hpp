#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyimage/linalg.hpp"
#include "polyimage/rational.hpp"

namespace polyimage {

/// One inequality a·x <= b.
struct IneqRow {
  QVector a;
  Rational b;

  bool holds_at(const QVector& x) const { return dot(a, x) <= b; }

  friend bool operator==(const IneqRow&, const IneqRow&) = default;
  friend auto operator<=>(const IneqRow& l, const IneqRow& r) {
    if (auto c = l.a <=> r.a; c != 0) return c;
    return l.b <=> r.b;
  }
};

/// A row in primitive integer form together with the positive factor that
/// produced it from the original row.
struct ScaledRow {
  IneqRow row;
  Rational scale;
};

/// Scales a row to coprime integer coefficients (bound included). Returns
/// nullopt for vacuous rows 0 <= b with b >= 0; rows 0 <= b with b < 0 become
/// the marker 0 <= -1.
std::optional<ScaledRow> normalize_row(const IneqRow& row);

/// Intersection of finitely many closed half-spaces of Q^dim. An empty row
/// list is the whole space. Rows are kept in the order given; operations that
/// derive new polyhedra return them in canonical (normalized, sorted) form.
class HPolyhedron {
 public:
  explicit HPolyhedron(std::size_t dim = 0) : dim_(dim) {}
  HPolyhedron(std::size_t dim, std::vector<IneqRow> rows);

  std::size_t dim() const { return dim_; }
  const std::vector<IneqRow>& rows() const { return rows_; }
  const IneqRow& row(std::size_t i) const { return rows_[i]; }
  std::size_t size() const { return rows_.size(); }

  /// All bounds are zero.
  bool is_cone() const;

  friend bool operator==(const HPolyhedron&, const HPolyhedron&) = default;

 private:
  std::size_t dim_;
  std::vector<IneqRow> rows_;
};

/// Row indices split by the sign of a·xi.
struct SignPartition {
  std::vector<std::size_t> k_plus;
  std::vector<std::size_t> k_minus;
  std::vector<std::size_t> k_zero;
};

bool contains(const HPolyhedron& p, const QVector& x);

/// Canonical form: every row primitive, vacuous rows dropped, exact
/// duplicates merged, rows sorted lexicographically by (a, b).
HPolyhedron normalize_rows(const HPolyhedron& p);

HPolyhedron intersect(const HPolyhedron& p, const HPolyhedron& q, bool remove_redundant = false);

SignPartition sign_partition(const HPolyhedron& p, const QVector& xi);

/// Decides emptiness by eliminating every coordinate direction.
bool is_empty(const HPolyhedron& p);

/// A point of p obtained by back-substituting through the eliminations that
/// decide is_empty, or nullopt when p is empty.
std::optional<QVector> find_point(const HPolyhedron& p);

/// Indices (ascending) of a subset of p's rows describing the same set. A row
/// is dropped when the supremum of its functional over the remaining rows
/// does not exceed its bound.
std::vector<std::size_t> irredundant_rows(const HPolyhedron& p);

HPolyhedron remove_redundancy(const HPolyhedron& p);

/// Exact supremum of f·x over p; nullopt when unbounded above. Throws
/// PreconditionViolated when p is empty.
std::optional<Rational> supremum(const HPolyhedron& p, const QVector& f);

}  // namespace polyimage
