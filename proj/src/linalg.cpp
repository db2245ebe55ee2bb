#include "polyimage/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "polyimage/errors.hpp"

namespace polyimage {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

// In-place Gauss-Jordan over the first `pivot_cols` columns.
std::vector<std::size_t> reduce(QMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < pivot_cols && prow < m.rows(); ++c) {
    std::size_t r = prow;
    while (r < m.rows() && m(r, c).is_zero()) ++r;
    if (r == m.rows()) continue;
    if (r != prow) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(prow, k));
    }
    const Rational inv = Rational(1) / m(prow, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(prow, k) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == prow || m(i, c).is_zero()) continue;
      const Rational factor = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= factor * m(prow, k);
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

bool QVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Rational& r) { return r.is_zero(); });
}

QVector QVector::unit(std::size_t dim, std::size_t index) {
  QVector v(dim);
  v[index] = 1;
  return v;
}

std::string QVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

Rational dot(const QVector& a, const QVector& b) {
  require_same_dim(a.dim(), b.dim(), "dot");
  mpq_class acc;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i].raw() * b[i].raw();
  return Rational(std::move(acc));
}

QVector operator+(const QVector& a, const QVector& b) {
  require_same_dim(a.dim(), b.dim(), "vector sum");
  QVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVector operator-(const QVector& a, const QVector& b) {
  require_same_dim(a.dim(), b.dim(), "vector difference");
  QVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVector operator*(const Rational& c, const QVector& v) {
  QVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = c * v[i];
  return out;
}

QVector primitive_positive_scale(const QVector& v) {
  if (v.is_zero()) return v;
  mpz_class lcm_den(1);
  for (const Rational& x : v) lcm_den = lcm(lcm_den, x.denominator());
  mpz_class g(0);
  for (const Rational& x : v) g = gcd(g, mpz_class(x.numerator() * (lcm_den / x.denominator())));
  return Rational(lcm_den, g) * v;
}

QVector primitive_form(const QVector& v) {
  QVector out = primitive_positive_scale(v);
  for (const Rational& x : out) {
    if (x.is_zero()) continue;
    if (x.sign() < 0) out = Rational(-1) * out;
    break;
  }
  return out;
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(std::size_t cols, std::span<const QVector> rows) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_same_dim(rows[r].dim(), cols, "matrix row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(std::vector<Rational>(data_.begin() + r * cols_,
                                       data_.begin() + (r + 1) * cols_));
}

QVector QMatrix::col(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QVector operator*(const QMatrix& m, const QVector& v) {
  require_same_dim(m.cols(), v.dim(), "matrix-vector product");
  QVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpq_class acc;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c).raw() * v[c].raw();
    out[r] = Rational(std::move(acc));
  }
  return out;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "matrix product");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      mpq_class acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k).raw() * b(k, c).raw();
      out(r, c) = Rational(std::move(acc));
    }
  return out;
}

QVector left_multiply(const QVector& v, const QMatrix& m) {
  require_same_dim(v.dim(), m.rows(), "row-vector product");
  QVector out(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    mpq_class acc;
    for (std::size_t r = 0; r < m.rows(); ++r) acc += v[r].raw() * m(r, c).raw();
    out[c] = Rational(std::move(acc));
  }
  return out;
}

RrefResult rref(const QMatrix& m) {
  RrefResult out{m, {}};
  out.pivots = reduce(out.matrix, m.cols());
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::vector<QVector> kernel_basis(const QMatrix& m) {
  const RrefResult red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : red.pivots) is_pivot[p] = true;

  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = -red.matrix(i, free);
    basis.push_back(primitive_form(v));
  }
  return basis;
}

QMatrix right_inverse(const QMatrix& m) {
  QMatrix aug(m.rows(), m.cols() + m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols() + r) = 1;
  }
  const auto pivots = reduce(aug, m.cols());
  if (pivots.size() < m.rows()) throw NotSurjective(pivots.size(), m.rows());

  QMatrix p(m.cols(), m.rows());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t e = 0; e < m.rows(); ++e) p(pivots[i], e) = aug(i, m.cols() + e);
  return p;
}

std::optional<QVector> solve_affine(const QMatrix& m, const QVector& b) {
  require_same_dim(b.dim(), m.rows(), "solve_affine right-hand side");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto pivots = reduce(aug, m.cols());
  for (std::size_t r = pivots.size(); r < m.rows(); ++r) {
    if (!aug(r, m.cols()).is_zero()) return std::nullopt;
  }
  QVector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

}  // namespace polyimage
