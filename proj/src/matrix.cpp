#include "varred/matrix.hpp"

#include <sstream>

namespace varred {

RatMat to_ratmat(const ConstMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) r(i, j) = RatFun(m(i, j));
  return r;
}

RatMat derivative(const RatMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) r(i, j) = m(i, j).derivative();
  return r;
}

RatMat scale(const ConstMat& m, const RatFun& a) {
  RatMat r(m.rows(), m.cols());
  if (a.is_zero()) return r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) r(i, j) = a * m(i, j);
  return r;
}

ConstMat to_constmat(const RatMat& m) {
  ConstMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      if (!m(i, j).is_constant()) throw PreconditionError("matrix entry is not constant");
      r(i, j) = m(i, j).constant_value();
    }
  return r;
}

QVector flatten(const ConstMat& m) { return m.data(); }

ConstMat unflatten(const QVector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw PreconditionError("unflatten: size mismatch");
  ConstMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

RrefResult rref(const ConstMat& m) {
  RrefResult res;
  res.reduced = m;
  ConstMat& a = res.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && sgn(a(piv, c)) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const ConstMat& m) { return rref(m).rank; }

std::vector<QVector> nullspace(const ConstMat& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<QVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) v[rr.pivots[k]] = -rr.reduced(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<QVector> solve_linear(const ConstMat& m, const QVector& b) {
  if (b.size() != m.rows()) throw PreconditionError("solve_linear: dimension mismatch");
  ConstMat aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
  RrefResult rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
  QVector x(m.cols(), Rational(0));
  for (std::size_t k = 0; k < rr.pivots.size(); ++k) x[rr.pivots[k]] = rr.reduced(k, m.cols());
  return x;
}

std::optional<QVector> coordinates_in_span(const QVector& v, const std::vector<QVector>& basis) {
  const std::size_t n = v.size();
  for (const auto& b : basis)
    if (b.size() != n) throw PreconditionError("coordinates_in_span: vector length mismatch");
  ConstMat m(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = basis[j][i];
  if (rank(m) != basis.size()) throw PreconditionError("coordinates_in_span: basis is linearly dependent");
  return solve_linear(m, v);
}

ConstMat inverse(const ConstMat& m) {
  if (!m.is_square()) throw PreconditionError("inverse: matrix not square");
  const std::size_t n = m.rows();
  ConstMat aug(n, 2 * n);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < n; ++i) aug(i, n + i) = 1;
  RrefResult rr = rref(aug);
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) throw PreconditionError("inverse: matrix is singular");
  return rr.reduced.block(0, n, n, n);
}

RatMat inverse(const RatMat& m) {
  if (!m.is_square()) throw PreconditionError("inverse: matrix not square");
  const std::size_t n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    // prefer the pivot with the simplest entry to limit expression growth
    std::size_t piv = n;
    std::size_t best = 0;
    for (std::size_t r = c; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      std::size_t cost = a(r, c).num().size() + a(r, c).den().size();
      if (piv == n || cost < best) {
        piv = r;
        best = cost;
      }
    }
    if (piv == n) throw PreconditionError("inverse: matrix is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    RatFun iv = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(c, j).is_zero()) a(c, j) *= iv;
      if (!inv(c, j).is_zero()) inv(c, j) *= iv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      RatFun f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

QVector mat_vec(const ConstMat& m, const QVector& v) {
  if (v.size() != m.cols()) throw PreconditionError("mat_vec: dimension mismatch");
  QVector r(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0 && sgn(v[j]) != 0) r[i] += m(i, j) * v[j];
  return r;
}

void SpanTracker::reduce(QVector& v, QVector* combo) const {
  for (const auto& row : rows_) {
    if (sgn(v[row.pivot]) == 0) continue;
    Rational f = v[row.pivot];
    for (std::size_t j = row.pivot; j < dim_; ++j)
      if (sgn(row.v[j]) != 0) v[j] -= f * row.v[j];
    if (combo)
      for (std::size_t k = 0; k < row.combo.size(); ++k)
        if (sgn(row.combo[k]) != 0) (*combo)[k] -= f * row.combo[k];
  }
}

bool SpanTracker::add(const QVector& v) {
  if (v.size() != dim_) throw PreconditionError("SpanTracker: vector length mismatch");
  QVector w = v;
  QVector combo(rows_.size() + 1, Rational(0));
  combo.back() = 1;
  reduce(w, &combo);
  std::size_t p = 0;
  while (p < dim_ && sgn(w[p]) == 0) ++p;
  if (p == dim_) return false;
  Rational inv = 1 / w[p];
  for (std::size_t j = p; j < dim_; ++j)
    if (sgn(w[j]) != 0) w[j] *= inv;
  for (auto& c : combo) c *= inv;
  for (auto& row : rows_) row.combo.resize(rows_.size() + 1, Rational(0));
  rows_.push_back({std::move(w), p, std::move(combo)});
  return true;
}

bool SpanTracker::contains(const QVector& v) const {
  QVector w = v;
  reduce(w, nullptr);
  for (const auto& c : w)
    if (sgn(c) != 0) return false;
  return true;
}

std::optional<QVector> SpanTracker::coordinates(const QVector& v) const {
  if (v.size() != dim_) throw PreconditionError("SpanTracker: vector length mismatch");
  QVector w = v;
  QVector combo(rows_.size(), Rational(0));
  reduce(w, &combo);
  for (const auto& c : w)
    if (sgn(c) != 0) return std::nullopt;
  // w_reduced = v - sum f_r row_r = 0, and combo accumulated -sum f_r combo_r
  for (auto& c : combo) c = -c;
  return combo;
}

std::string to_string(const ConstMat& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << "\n";
  }
  return os.str();
}

}  // namespace varred
