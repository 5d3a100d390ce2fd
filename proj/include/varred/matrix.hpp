#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "varred/error.hpp"
#include "varred/ratfun.hpp"

namespace varred {

/// Dense row-major matrix. T is Rational (ConstMat) or RatFun (RatMat).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!is_zero_value(v)) return false;
    return true;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& v : r.data_) v = -v;
    return r;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product: dimension mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& x = a(i, l);
        if (is_zero_value(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& y = b(l, j);
          if (is_zero_value(y)) continue;
          r(i, j) += x * y;
        }
      }
    }
    return r;
  }

  template <class S>
  Matrix scaled(const S& s) const {
    Matrix r = *this;
    for (auto& v : r.data_)
      if (!is_zero_value(v)) v = v * s;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& v : data_) n += !is_zero_value(v);
    return n;
  }

 private:
  static bool is_zero_value(const Rational& v) { return sgn(v) == 0; }
  static bool is_zero_value(const RatFun& v) { return v.is_zero(); }

  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix sum: dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ConstMat = Matrix<Rational>;
using RatMat = Matrix<RatFun>;
using QVector = std::vector<Rational>;

/// [a, b] = ab - ba
template <class T>
Matrix<T> bracket(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

RatMat to_ratmat(const ConstMat& m);
RatMat derivative(const RatMat& m);
/// Entrywise a * M.
RatMat scale(const ConstMat& m, const RatFun& a);
/// Throws PreconditionError when some entry is not constant.
ConstMat to_constmat(const RatMat& m);

/// Row-major flattening.
QVector flatten(const ConstMat& m);
ConstMat unflatten(const QVector& v, std::size_t rows, std::size_t cols);

struct RrefResult {
  ConstMat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Exact reduced row echelon form; pivots are leftmost nonzero columns taking
/// the first available row.
RrefResult rref(const ConstMat& m);
std::size_t rank(const ConstMat& m);
/// Basis of {v : M v = 0}, one vector per free column (free entry = 1).
std::vector<QVector> nullspace(const ConstMat& m);

/// Coordinates of v in span(basis) if v lies in it; throws PreconditionError
/// when the basis is dependent.
std::optional<QVector> coordinates_in_span(const QVector& v, const std::vector<QVector>& basis);

/// One solution of M x = b, if any.
std::optional<QVector> solve_linear(const ConstMat& m, const QVector& b);

/// Inverse over Q; throws PreconditionError when singular.
ConstMat inverse(const ConstMat& m);
/// Inverse over Q(x) by Gauss-Jordan elimination; throws when singular.
RatMat inverse(const RatMat& m);

QVector mat_vec(const ConstMat& m, const QVector& v);

/// Incrementally built echelon basis of a subspace of Q^n. Each stored row
/// remembers its expression in terms of the vectors accepted so far, so
/// coordinates with respect to the accepted vectors are cheap.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return rows_.size(); }

  /// Adds v if it is independent; returns whether it was added.
  bool add(const QVector& v);
  bool contains(const QVector& v) const;
  /// Coordinates of v with respect to the accepted vectors (in acceptance order).
  std::optional<QVector> coordinates(const QVector& v) const;

 private:
  struct Row {
    QVector v;              // normalized: v[pivot] == 1
    std::size_t pivot;
    QVector combo;          // v = sum combo[k] * accepted[k]
  };
  // reduces v in place against the stored rows, accumulating into combo
  void reduce(QVector& v, QVector* combo) const;

  std::size_t dim_;
  std::vector<Row> rows_;
};

std::string to_string(const ConstMat& m);

}  // namespace varred
