#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "polyimage/linalg.hpp"
#include "polyimage/polyhedron.hpp"

namespace polyimage {

/// Linear map X -> Y stored as a dim(Y) x dim(X) matrix.
struct LinMap {
  QMatrix matrix;

  std::size_t domain_dim() const { return matrix.cols(); }
  std::size_t codomain_dim() const { return matrix.rows(); }
  QVector operator()(const QVector& x) const { return matrix * x; }
};

/// Nonnegative multipliers over the rows of a source system. For a certified
/// row (g, b) of T(A): sum c_k f_k = g∘T and sum c_k λ_k = b.
struct Certificate {
  /// Sorted by row index, no zero coefficients.
  std::vector<std::pair<std::size_t, Rational>> multipliers;

  static Certificate unit(std::size_t index, const Rational& coeff = 1);

  std::size_t support_size() const { return multipliers.size(); }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// sum_i coeffs[i] * certs[i], merged by index.
Certificate combine(std::span<const std::pair<Rational, const Certificate*>> terms);

Certificate scaled(const Certificate& c, const Rational& factor);

/// A polyhedron paired with one certificate per row over some source system.
struct CertifiedPolyhedron {
  HPolyhedron polyhedron;
  std::vector<Certificate> certificates;
};

/// Removes direction xi: keeps rows with a·xi = 0 and adds, for every i with
/// a_i·xi > 0 and j with a_j·xi < 0, the row f_i - (f_i(xi)/f_j(xi)) f_j.
/// The result (normalized) contains x iff x + c·xi is in p for some c.
/// Certificates index the rows of p.
CertifiedPolyhedron eliminate_direction(const HPolyhedron& p, const QVector& xi);

/// Given x in eliminate_direction(p, xi), returns x + c·xi in p.
QVector lift_witness(const HPolyhedron& p, const QVector& xi, const QVector& x);

/// The unique g with g∘T = f, for surjective T with ker T ⊆ ker f.
std::pair<QVector, Rational> factor_through(const LinMap& t, const QVector& f, const Rational& b);

enum class RedundancyMode {
  Auto,    // prune between steps once a system exceeds `auto_threshold` rows
  Never,
  Always,  // prune between steps and minimize the final system
};

struct ImageOptions {
  RedundancyMode redundancy = RedundancyMode::Auto;
  std::size_t auto_threshold = 100;
  /// Drop rows whose certificate mixes more than k+1 source rows after k
  /// eliminations (such rows are always implied by the others).
  bool history_pruning = true;
};

/// T(A) for surjective T, with certificates over the rows of A.
CertifiedPolyhedron image(const LinMap& t, const HPolyhedron& a, const ImageOptions& options = {});

/// As image(), eliminating the given basis of ker T in the given order.
CertifiedPolyhedron image_with_basis(const LinMap& t, const HPolyhedron& a,
                                     std::span<const QVector> kernel,
                                     const ImageOptions& options = {});

/// T(A) for any T: the codomain is first restricted to range(T), the image is
/// taken there, and range(T) is re-imposed with equality pairs. Not limited to
/// surjective maps; no certificates.
HPolyhedron image_onto_range(const LinMap& t, const HPolyhedron& a, const ImageOptions& options = {});

/// T^{-1}(B): rows (g·T, μ), normalized. Any T.
HPolyhedron preimage(const LinMap& t, const HPolyhedron& b);

/// Audits one certified row of T(A) (use the identity map for rows derived
/// in the same space as A).
bool check_certificate(const HPolyhedron& a, const LinMap& t, const IneqRow& row,
                       const Certificate& cert);

namespace detail {

/// Rows derived from a fixed source system, each with its certificate.
/// `history[r]` lists the rows of the system at the last reset that row r
/// combines; `since_reset` counts eliminations performed since that reset.
struct DerivedSystem {
  std::size_t dim = 0;
  std::vector<IneqRow> rows;
  std::vector<Certificate> certs;
  std::vector<std::vector<std::size_t>> history;
  std::size_t since_reset = 0;
};

struct PruneOptions {
  bool history = true;
  RedundancyMode redundancy = RedundancyMode::Never;
  std::size_t auto_threshold = 100;
};

/// Normalized copy of `source` with each row certified by its own scale.
DerivedSystem derive(const HPolyhedron& source);

/// Eliminates xi from `sys`, composing certificates back to the source, then
/// drops rows whose history exceeds since_reset + 1 and, depending on
/// `options.redundancy`, every redundant row (which resets the histories).
/// Directions on which every row vanishes are skipped.
void eliminate(DerivedSystem& sys, const QVector& xi, const PruneOptions& options);

/// True when some row reads 0 <= b with b < 0.
bool has_contradiction(const DerivedSystem& sys);

HPolyhedron as_polyhedron(const DerivedSystem& sys);

}  // namespace detail

}  // namespace polyimage
