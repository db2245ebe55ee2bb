#include "polyimage/polyhedron.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <variant>

#include "canonical.hpp"
#include "polyimage/errors.hpp"
#include "polyimage/projection.hpp"

namespace polyimage {

namespace {

void require_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(expected) + ", got " + std::to_string(actual));
  }
}

bool row_is_contradiction(const IneqRow& r) { return r.a.is_zero() && r.b.sign() < 0; }

// e·x = b used to solve for coordinate `coord`.
struct Substitution {
  IneqRow equality;
  std::size_t coord;
};

struct Elimination {
  HPolyhedron system;
  QVector direction;
};

using Stage = std::variant<Substitution, Elimination>;

// Finds a row whose exact negation is also present.
std::optional<IneqRow> find_equality(const std::vector<IneqRow>& rows) {
  const std::set<IneqRow> present(rows.begin(), rows.end());
  for (const IneqRow& r : rows) {
    if (r.a.is_zero()) continue;
    if (present.contains(IneqRow{Rational(-1) * r.a, -r.b})) return r;
  }
  return std::nullopt;
}

HPolyhedron substitute(const HPolyhedron& p, const IneqRow& eq, std::size_t coord) {
  std::vector<IneqRow> out;
  out.reserve(p.size());
  for (const IneqRow& r : p.rows()) {
    if (r.a[coord].is_zero()) {
      out.push_back(r);
      continue;
    }
    const Rational factor = r.a[coord] / eq.a[coord];
    out.push_back(IneqRow{r.a - factor * eq.a, r.b - factor * eq.b});
  }
  return normalize_rows(HPolyhedron(p.dim(), std::move(out)));
}

// Coordinate whose Fourier-Motzkin step creates the fewest rows, or nullopt
// when every row vanishes on every coordinate.
std::optional<std::size_t> cheapest_coordinate(const detail::DerivedSystem& sys) {
  std::optional<std::size_t> best;
  long best_score = std::numeric_limits<long>::max();
  for (std::size_t j = 0; j < sys.dim; ++j) {
    long plus = 0;
    long minus = 0;
    for (const IneqRow& r : sys.rows) {
      const int s = r.a[j].sign();
      plus += s > 0;
      minus += s < 0;
    }
    if (plus + minus == 0) continue;
    const long score = plus * minus - plus - minus;
    if (score < best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

// Forward pass shared by is_empty and find_point. Returns false when the
// system is infeasible; otherwise `stages` (if given) lists the steps to undo.
bool eliminate_all(const HPolyhedron& p, std::vector<Stage>* stages) {
  HPolyhedron cur = normalize_rows(p);
  auto contradicted = [](const HPolyhedron& h) {
    return std::any_of(h.rows().begin(), h.rows().end(), row_is_contradiction);
  };
  if (contradicted(cur)) return false;

  // Equality pairs are used for substitution first; pairing them with every
  // opposite-signed row would only add implied rows.
  while (auto eq = find_equality(cur.rows())) {
    std::size_t coord = 0;
    while (eq->a[coord].is_zero()) ++coord;
    if (stages) stages->push_back(Substitution{*eq, coord});
    cur = substitute(cur, *eq, coord);
    if (contradicted(cur)) return false;
  }

  detail::DerivedSystem sys = detail::derive(cur);
  const detail::PruneOptions prune{.history = true};
  while (auto coord = cheapest_coordinate(sys)) {
    const QVector direction = QVector::unit(sys.dim, *coord);
    if (stages) stages->push_back(Elimination{detail::as_polyhedron(sys), direction});
    detail::eliminate(sys, direction, prune);
    if (detail::has_contradiction(sys)) return false;
  }
  return !detail::has_contradiction(sys);
}

enum class SupKind { Empty, Unbounded, Finite };

struct Sup {
  SupKind kind;
  Rational value;
};

// Eliminates the orthogonal complement of f; what survives bounds f·x.
Sup supremum_impl(const HPolyhedron& p, const QVector& f) {
  if (f.is_zero()) {
    return is_empty(p) ? Sup{SupKind::Empty, {}} : Sup{SupKind::Finite, 0};
  }
  QMatrix fm(1, f.dim());
  for (std::size_t j = 0; j < f.dim(); ++j) fm(0, j) = f[j];

  detail::DerivedSystem sys = detail::derive(p);
  const detail::PruneOptions prune{.history = true};
  for (const QVector& d : kernel_basis(fm)) {
    detail::eliminate(sys, d, prune);
    if (detail::has_contradiction(sys)) return {SupKind::Empty, {}};
  }

  const Rational ff = dot(f, f);
  std::optional<Rational> upper;
  std::optional<Rational> lower;
  for (const IneqRow& r : sys.rows) {
    // r.a is parallel to f: r.a = c f, so the row reads c (f·x) <= b.
    const Rational c = dot(r.a, f) / ff;
    if (c.is_zero()) continue;
    const Rational bound = r.b / c;
    if (c.sign() > 0) {
      if (!upper || bound < *upper) upper = bound;
    } else {
      if (!lower || bound > *lower) lower = bound;
    }
  }
  if (upper && lower && *lower > *upper) return {SupKind::Empty, {}};
  if (!upper) return {SupKind::Unbounded, {}};
  return {SupKind::Finite, *upper};
}

}  // namespace

std::optional<ScaledRow> normalize_row(const IneqRow& row) {
  if (row.a.is_zero()) {
    if (row.b.sign() >= 0) return std::nullopt;
    return ScaledRow{IneqRow{QVector(row.a.dim()), -1}, Rational(1) / abs(row.b)};
  }
  mpz_class lcm_den = row.b.denominator();
  for (const Rational& x : row.a) lcm_den = lcm(lcm_den, x.denominator());
  mpz_class g = row.b.numerator() * (lcm_den / row.b.denominator());
  for (const Rational& x : row.a) g = gcd(g, mpz_class(x.numerator() * (lcm_den / x.denominator())));
  g = abs(g);
  const Rational scale(lcm_den, g);
  return ScaledRow{IneqRow{scale * row.a, scale * row.b}, scale};
}

HPolyhedron::HPolyhedron(std::size_t dim, std::vector<IneqRow> rows)
    : dim_(dim), rows_(std::move(rows)) {
  for (const IneqRow& r : rows_) require_dim(dim_, r.a.dim(), "inequality row");
}

bool HPolyhedron::is_cone() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const IneqRow& r) { return r.b.is_zero(); });
}

bool contains(const HPolyhedron& p, const QVector& x) {
  require_dim(p.dim(), x.dim(), "contains");
  return std::all_of(p.rows().begin(), p.rows().end(),
                     [&](const IneqRow& r) { return r.holds_at(x); });
}

HPolyhedron normalize_rows(const HPolyhedron& p) {
  std::vector<IneqRow> rows;
  for (auto& c : detail::canonicalize(p.rows())) rows.push_back(std::move(c.row));
  return HPolyhedron(p.dim(), std::move(rows));
}

HPolyhedron intersect(const HPolyhedron& p, const HPolyhedron& q, bool remove_redundant) {
  require_dim(p.dim(), q.dim(), "intersect");
  std::vector<IneqRow> rows = p.rows();
  rows.insert(rows.end(), q.rows().begin(), q.rows().end());
  HPolyhedron out = normalize_rows(HPolyhedron(p.dim(), std::move(rows)));
  return remove_redundant ? remove_redundancy(out) : out;
}

SignPartition sign_partition(const HPolyhedron& p, const QVector& xi) {
  require_dim(p.dim(), xi.dim(), "sign_partition");
  SignPartition out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const int s = dot(p.row(k).a, xi).sign();
    (s > 0 ? out.k_plus : s < 0 ? out.k_minus : out.k_zero).push_back(k);
  }
  return out;
}

bool is_empty(const HPolyhedron& p) { return !eliminate_all(p, nullptr); }

std::optional<QVector> find_point(const HPolyhedron& p) {
  std::vector<Stage> stages;
  if (!eliminate_all(p, &stages)) return std::nullopt;

  QVector x(p.dim());
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    if (const auto* sub = std::get_if<Substitution>(&*it)) {
      const IneqRow& e = sub->equality;
      x[sub->coord] += (e.b - dot(e.a, x)) / e.a[sub->coord];
    } else {
      const auto& elim = std::get<Elimination>(*it);
      x = lift_witness(elim.system, elim.direction, x);
    }
  }
  return x;
}

std::vector<std::size_t> irredundant_rows(const HPolyhedron& p) {
  std::vector<std::size_t> kept(p.size());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;

  for (std::size_t r = 0; r < p.size(); ++r) {
    std::vector<IneqRow> others;
    for (std::size_t k : kept) {
      if (k != r) others.push_back(p.row(k));
    }
    const Sup sup = supremum_impl(HPolyhedron(p.dim(), std::move(others)), p.row(r).a);
    const bool redundant = sup.kind == SupKind::Empty ||
                           (sup.kind == SupKind::Finite && sup.value <= p.row(r).b);
    if (redundant) kept.erase(std::find(kept.begin(), kept.end(), r));
  }
  return kept;
}

HPolyhedron remove_redundancy(const HPolyhedron& p) {
  std::vector<IneqRow> rows;
  for (std::size_t k : irredundant_rows(p)) rows.push_back(p.row(k));
  return HPolyhedron(p.dim(), std::move(rows));
}

std::optional<Rational> supremum(const HPolyhedron& p, const QVector& f) {
  require_dim(p.dim(), f.dim(), "supremum");
  const Sup sup = supremum_impl(p, f);
  switch (sup.kind) {
    case SupKind::Empty:
      throw PreconditionViolated("supremum over an empty polyhedron");
    case SupKind::Unbounded:
      return std::nullopt;
    case SupKind::Finite:
      break;
  }
  return sup.value;
}

namespace detail {

std::vector<CanonicalRow> canonicalize(std::span<const IneqRow> rows,
                                       const std::function<std::size_t(std::size_t)>& preference) {
  std::vector<CanonicalRow> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (auto n = normalize_row(rows[i])) out.push_back({std::move(n->row), i, std::move(n->scale)});
  }
  auto pref = [&](const CanonicalRow& c) { return preference ? preference(c.source) : 0; };
  std::stable_sort(out.begin(), out.end(), [&](const CanonicalRow& l, const CanonicalRow& r) {
    if (auto c = l.row <=> r.row; c != 0) return c < 0;
    return pref(l) < pref(r);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const CanonicalRow& l, const CanonicalRow& r) { return l.row == r.row; }),
            out.end());
  return out;
}

}  // namespace detail

}  // namespace polyimage
