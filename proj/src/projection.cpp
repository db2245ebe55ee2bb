#include "polyimage/projection.hpp"

#include <algorithm>
#include <optional>

#include "canonical.hpp"
#include "polyimage/errors.hpp"

namespace polyimage {

namespace {

void require_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(expected) + ", got " + std::to_string(actual));
  }
}

// One row of A1 ∩ A2 before normalization: coeff_i * row_i + coeff_j * row_j.
struct RawRow {
  IneqRow row;
  std::size_t i;
  Rational coeff_i;
  std::optional<std::size_t> j;
  Rational coeff_j;
};

std::vector<RawRow> raw_eliminate(const std::vector<IneqRow>& rows, const QVector& xi) {
  std::vector<Rational> along(rows.size());
  std::vector<std::size_t> plus, minus;
  std::vector<RawRow> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    along[k] = dot(rows[k].a, xi);
    const int s = along[k].sign();
    if (s > 0) {
      plus.push_back(k);
    } else if (s < 0) {
      minus.push_back(k);
    } else {
      out.push_back({rows[k], k, 1, std::nullopt, {}});
    }
  }
  for (std::size_t i : plus) {
    for (std::size_t j : minus) {
      // h_ij = f_i - (f_i(xi)/f_j(xi)) f_j; the ratio is negative.
      const Rational mult = -(along[i] / along[j]);
      out.push_back({IneqRow{rows[i].a + mult * rows[j].a, rows[i].b + mult * rows[j].b},
                     i, 1, j, mult});
    }
  }
  return out;
}

std::vector<IneqRow> rows_of(const std::vector<RawRow>& raw) {
  std::vector<IneqRow> out;
  out.reserve(raw.size());
  for (const RawRow& r : raw) out.push_back(r.row);
  return out;
}

void check_direction(const HPolyhedron& p, const QVector& xi) {
  require_dim(p.dim(), xi.dim(), "elimination direction");
  if (xi.is_zero()) throw ZeroDirection("elimination direction is zero");
}

std::vector<std::size_t> merge_sorted(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Certificate Certificate::unit(std::size_t index, const Rational& coeff) {
  Certificate c;
  if (!coeff.is_zero()) c.multipliers.emplace_back(index, coeff);
  return c;
}

Certificate combine(std::span<const std::pair<Rational, const Certificate*>> terms) {
  std::vector<std::pair<std::size_t, Rational>> all;
  for (const auto& [coeff, cert] : terms) {
    for (const auto& [index, m] : cert->multipliers) all.emplace_back(index, coeff * m);
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  Certificate out;
  for (auto& [index, m] : all) {
    if (!out.multipliers.empty() && out.multipliers.back().first == index) {
      out.multipliers.back().second += m;
    } else {
      out.multipliers.emplace_back(index, std::move(m));
    }
  }
  std::erase_if(out.multipliers, [](const auto& e) { return e.second.is_zero(); });
  return out;
}

Certificate scaled(const Certificate& c, const Rational& factor) {
  const std::pair<Rational, const Certificate*> term{factor, &c};
  return combine(std::span(&term, 1));
}

CertifiedPolyhedron eliminate_direction(const HPolyhedron& p, const QVector& xi) {
  check_direction(p, xi);
  const std::vector<RawRow> raw = raw_eliminate(p.rows(), xi);
  const std::vector<IneqRow> raw_rows = rows_of(raw);
  const auto canon = detail::canonicalize(
      raw_rows, [&](std::size_t k) -> std::size_t { return raw[k].j ? 2 : 1; });

  CertifiedPolyhedron out;
  std::vector<IneqRow> rows;
  for (const auto& c : canon) {
    const RawRow& r = raw[c.source];
    Certificate cert = Certificate::unit(r.i, c.scale * r.coeff_i);
    if (r.j) {
      cert.multipliers.emplace_back(*r.j, c.scale * r.coeff_j);
      std::sort(cert.multipliers.begin(), cert.multipliers.end(),
                [](const auto& l, const auto& rr) { return l.first < rr.first; });
    }
    rows.push_back(c.row);
    out.certificates.push_back(std::move(cert));
  }
  out.polyhedron = HPolyhedron(p.dim(), std::move(rows));
  return out;
}

QVector lift_witness(const HPolyhedron& p, const QVector& xi, const QVector& x) {
  check_direction(p, xi);
  require_dim(p.dim(), x.dim(), "lift_witness point");

  const SignPartition part = sign_partition(p, xi);
  std::vector<Rational> along(p.size());
  std::vector<Rational> value(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    along[k] = dot(p.row(k).a, xi);
    value[k] = dot(p.row(k).a, x);
  }

  // x must lie in A1 ∩ A2.
  for (std::size_t k : part.k_zero) {
    if (value[k] > p.row(k).b) {
      throw PreconditionViolated("point " + x.str() + " violates row " + std::to_string(k) +
                                 " which does not involve the direction");
    }
  }
  for (std::size_t i : part.k_plus) {
    for (std::size_t j : part.k_minus) {
      const Rational ratio = along[i] / along[j];
      if (value[i] - ratio * value[j] > p.row(i).b - ratio * p.row(j).b) {
        throw PreconditionViolated("point " + x.str() + " violates the combination of rows " +
                                   std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }

  // Step length that makes row k tight.
  auto tight = [&](std::size_t k) { return (p.row(k).b - value[k]) / along[k]; };

  Rational step;
  if (!part.k_minus.empty()) {
    // t = max over K- of (λ_j - f_j(x)) / f_j(xi); ties go to the first index.
    step = tight(part.k_minus.front());
    for (std::size_t j : part.k_minus) step = std::max(step, tight(j));
  } else if (!part.k_plus.empty()) {
    // s = min over K+ of (λ_i - f_i(x)) / f_i(xi).
    step = tight(part.k_plus.front());
    for (std::size_t i : part.k_plus) step = std::min(step, tight(i));
  }
  return x + step * xi;
}

namespace {

// g with g∘T = f, given a right inverse of T and a basis of ker T.
QVector factor_row(const QMatrix& right_inv, std::span<const QVector> kernel, const QVector& f) {
  for (const QVector& v : kernel) {
    if (!dot(f, v).is_zero()) {
      throw KernelNotContained("functional " + f.str() + " does not vanish on kernel vector " +
                               v.str());
    }
  }
  return left_multiply(f, right_inv);
}

void require_surjective(const LinMap& t) {
  const std::size_t r = rank(t.matrix);
  if (r < t.codomain_dim()) throw NotSurjective(r, t.codomain_dim());
}

}  // namespace

std::pair<QVector, Rational> factor_through(const LinMap& t, const QVector& f, const Rational& b) {
  require_dim(t.domain_dim(), f.dim(), "factor_through functional");
  require_surjective(t);
  const std::vector<QVector> kernel = kernel_basis(t.matrix);
  return {factor_row(right_inverse(t.matrix), kernel, f), b};
}

CertifiedPolyhedron image_with_basis(const LinMap& t, const HPolyhedron& a,
                                     std::span<const QVector> kernel,
                                     const ImageOptions& options) {
  require_dim(t.domain_dim(), a.dim(), "image: polyhedron vs map domain");
  require_surjective(t);

  const std::size_t nullity = t.domain_dim() - t.codomain_dim();
  if (kernel.size() != nullity ||
      rank(QMatrix::from_rows(t.domain_dim(), kernel)) != nullity ||
      std::any_of(kernel.begin(), kernel.end(),
                  [&](const QVector& v) { return !(t.matrix * v).is_zero(); })) {
    throw PreconditionViolated("directions do not form a basis of the kernel");
  }

  const detail::PruneOptions prune{.history = options.history_pruning,
                                   .redundancy = options.redundancy,
                                   .auto_threshold = options.auto_threshold};
  detail::DerivedSystem sys = detail::derive(a);
  for (const QVector& v : kernel) detail::eliminate(sys, v, prune);

  if (options.redundancy == RedundancyMode::Always) {
    const auto kept = irredundant_rows(detail::as_polyhedron(sys));
    std::vector<IneqRow> rows;
    std::vector<Certificate> certs;
    for (std::size_t k : kept) {
      rows.push_back(sys.rows[k]);
      certs.push_back(sys.certs[k]);
    }
    sys.rows = std::move(rows);
    sys.certs = std::move(certs);
  }

  // Every surviving functional vanishes on ker T and factors through T.
  const QMatrix right_inv = right_inverse(t.matrix);
  std::vector<IneqRow> factored;
  factored.reserve(sys.rows.size());
  for (const IneqRow& r : sys.rows) factored.push_back({factor_row(right_inv, kernel, r.a), r.b});

  const auto canon = detail::canonicalize(
      factored, [&](std::size_t k) { return sys.certs[k].support_size(); });
  CertifiedPolyhedron out;
  std::vector<IneqRow> rows;
  for (const auto& c : canon) {
    rows.push_back(c.row);
    out.certificates.push_back(scaled(sys.certs[c.source], c.scale));
  }
  out.polyhedron = HPolyhedron(t.codomain_dim(), std::move(rows));
  return out;
}

CertifiedPolyhedron image(const LinMap& t, const HPolyhedron& a, const ImageOptions& options) {
  require_dim(t.domain_dim(), a.dim(), "image: polyhedron vs map domain");
  require_surjective(t);
  const std::vector<QVector> kernel = kernel_basis(t.matrix);
  return image_with_basis(t, a, kernel, options);
}

HPolyhedron image_onto_range(const LinMap& t, const HPolyhedron& a, const ImageOptions& options) {
  require_dim(t.domain_dim(), a.dim(), "image: polyhedron vs map domain");
  const std::size_t m = t.codomain_dim();

  // Rows of T at the pivots of T^t form a basis of its row space.
  const std::vector<std::size_t> selected = rref(t.matrix.transpose()).pivots;
  std::vector<QVector> sel_rows;
  for (std::size_t k : selected) sel_rows.push_back(t.matrix.row(k));
  const LinMap onto{QMatrix::from_rows(t.domain_dim(), sel_rows)};
  const HPolyhedron reduced = image(onto, a, options).polyhedron;

  std::vector<IneqRow> rows;
  for (const IneqRow& r : reduced.rows()) {
    QVector lifted(m);
    for (std::size_t s = 0; s < selected.size(); ++s) lifted[selected[s]] = r.a[s];
    rows.push_back({std::move(lifted), r.b});
  }
  // The remaining coordinates are fixed combinations of the selected ones.
  const QMatrix basis_t = onto.matrix.transpose();
  for (std::size_t k = 0; k < m; ++k) {
    if (std::binary_search(selected.begin(), selected.end(), k)) continue;
    const auto coeffs = solve_affine(basis_t, t.matrix.row(k));
    QVector eq(m);
    eq[k] = 1;
    for (std::size_t s = 0; s < selected.size(); ++s) eq[selected[s]] = -(*coeffs)[s];
    rows.push_back({eq, 0});
    rows.push_back({Rational(-1) * eq, 0});
  }
  return normalize_rows(HPolyhedron(m, std::move(rows)));
}

HPolyhedron preimage(const LinMap& t, const HPolyhedron& b) {
  require_dim(t.codomain_dim(), b.dim(), "preimage: polyhedron vs map codomain");
  std::vector<IneqRow> rows;
  rows.reserve(b.size());
  for (const IneqRow& r : b.rows()) rows.push_back({left_multiply(r.a, t.matrix), r.b});
  return normalize_rows(HPolyhedron(t.domain_dim(), std::move(rows)));
}

bool check_certificate(const HPolyhedron& a, const LinMap& t, const IneqRow& row,
                       const Certificate& cert) {
  require_dim(t.domain_dim(), a.dim(), "certificate: polyhedron vs map domain");
  require_dim(t.codomain_dim(), row.a.dim(), "certificate: row vs map codomain");

  QVector combo(a.dim());
  Rational bound;
  for (const auto& [index, coeff] : cert.multipliers) {
    if (index >= a.size()) {
      throw IndexOutOfRange("certificate index " + std::to_string(index) + " >= " +
                            std::to_string(a.size()) + " rows");
    }
  }
  for (const auto& [index, coeff] : cert.multipliers) {
    if (coeff.sign() < 0) return false;
    combo = combo + coeff * a.row(index).a;
    bound += coeff * a.row(index).b;
  }
  return combo == left_multiply(row.a, t.matrix) && bound == row.b;
}

namespace detail {

DerivedSystem derive(const HPolyhedron& source) {
  DerivedSystem sys;
  sys.dim = source.dim();
  for (auto& c : canonicalize(source.rows())) {
    sys.history.push_back({sys.rows.size()});
    sys.rows.push_back(std::move(c.row));
    sys.certs.push_back(Certificate::unit(c.source, c.scale));
  }
  return sys;
}

void eliminate(DerivedSystem& sys, const QVector& xi, const PruneOptions& options) {
  require_dim(sys.dim, xi.dim(), "elimination direction");
  if (xi.is_zero()) throw ZeroDirection("elimination direction is zero");
  if (std::all_of(sys.rows.begin(), sys.rows.end(),
                  [&](const IneqRow& r) { return dot(r.a, xi).is_zero(); })) {
    return;
  }

  const std::vector<RawRow> raw = raw_eliminate(sys.rows, xi);
  std::vector<Certificate> certs;
  std::vector<std::vector<std::size_t>> history;
  certs.reserve(raw.size());
  history.reserve(raw.size());
  for (const RawRow& r : raw) {
    if (r.j) {
      const std::pair<Rational, const Certificate*> terms[] = {{r.coeff_i, &sys.certs[r.i]},
                                                               {r.coeff_j, &sys.certs[*r.j]}};
      certs.push_back(combine(terms));
      history.push_back(merge_sorted(sys.history[r.i], sys.history[*r.j]));
    } else {
      certs.push_back(sys.certs[r.i]);
      history.push_back(sys.history[r.i]);
    }
  }

  const std::vector<IneqRow> raw_rows = rows_of(raw);
  const auto canon = canonicalize(raw_rows, [&](std::size_t k) { return history[k].size(); });
  ++sys.since_reset;

  sys.rows.clear();
  sys.certs.clear();
  sys.history.clear();
  for (const auto& c : canon) {
    if (options.history && history[c.source].size() > sys.since_reset + 1) continue;
    sys.rows.push_back(c.row);
    sys.certs.push_back(scaled(certs[c.source], c.scale));
    sys.history.push_back(std::move(history[c.source]));
  }

  const bool prune = options.redundancy == RedundancyMode::Always ||
                     (options.redundancy == RedundancyMode::Auto &&
                      sys.rows.size() > options.auto_threshold);
  if (prune) {
    const auto kept = irredundant_rows(as_polyhedron(sys));
    DerivedSystem next;
    next.dim = sys.dim;
    for (std::size_t k : kept) {
      next.history.push_back({next.rows.size()});
      next.rows.push_back(std::move(sys.rows[k]));
      next.certs.push_back(std::move(sys.certs[k]));
    }
    sys = std::move(next);
  }
}

bool has_contradiction(const DerivedSystem& sys) {
  return std::any_of(sys.rows.begin(), sys.rows.end(),
                     [](const IneqRow& r) { return r.a.is_zero() && r.b.sign() < 0; });
}

HPolyhedron as_polyhedron(const DerivedSystem& sys) { return HPolyhedron(sys.dim, sys.rows); }

}  // namespace detail

}  // namespace polyimage
