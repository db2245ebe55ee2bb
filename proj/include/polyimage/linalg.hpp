#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyimage/rational.hpp"

namespace polyimage {

/// Dense exact coordinate vector.
class QVector {
 public:
  QVector() = default;
  explicit QVector(std::size_t dim) : entries_(dim) {}
  explicit QVector(std::vector<Rational> entries) : entries_(std::move(entries)) {}
  QVector(std::initializer_list<Rational> entries) : entries_(entries) {}

  std::size_t dim() const { return entries_.size(); }
  const std::vector<Rational>& entries() const { return entries_; }

  Rational& operator[](std::size_t i) { return entries_[i]; }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool is_zero() const;

  static QVector unit(std::size_t dim, std::size_t index);

  friend bool operator==(const QVector&, const QVector&) = default;
  friend auto operator<=>(const QVector& a, const QVector& b) {
    return a.entries_ <=> b.entries_;
  }

  /// "(1/2,0)" style rendering used in diagnostics.
  std::string str() const;

 private:
  std::vector<Rational> entries_;
};

Rational dot(const QVector& a, const QVector& b);
QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rational& c, const QVector& v);

/// Scales `v` by a positive factor so that its entries are coprime integers.
/// The zero vector is returned unchanged.
QVector primitive_positive_scale(const QVector& v);

/// Same as primitive_positive_scale, additionally flipping the sign so the
/// first nonzero entry is positive.
QVector primitive_form(const QVector& v);

/// Dense row-major exact matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(std::size_t cols, std::span<const QVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector col(std::size_t c) const;
  QMatrix transpose() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QVector operator*(const QMatrix& m, const QVector& v);
QMatrix operator*(const QMatrix& a, const QMatrix& b);

/// Row vector times matrix: returns the coefficients of `v ∘ m`.
QVector left_multiply(const QVector& v, const QMatrix& m);

struct RrefResult {
  QMatrix matrix;
  std::vector<std::size_t> pivots;
};

/// Exact Gauss-Jordan elimination. Pivots are chosen as the first nonzero
/// entry scanning columns left to right.
RrefResult rref(const QMatrix& m);

std::size_t rank(const QMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column in increasing order,
/// each in primitive integer form with a positive leading entry.
std::vector<QVector> kernel_basis(const QMatrix& m);

/// P with m P = I. Column i solves m p = e_i with all free variables zero.
/// Throws NotSurjective when rank(m) < rows(m).
QMatrix right_inverse(const QMatrix& m);

/// One solution of m x = b (free variables zero), or nullopt if the system is
/// inconsistent.
std::optional<QVector> solve_affine(const QMatrix& m, const QVector& b);

}  // namespace polyimage
