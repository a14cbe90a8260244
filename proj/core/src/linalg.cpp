#include "rumin/linalg.hpp"

#include <utility>

#include "rumin/errors.hpp"

namespace rumin {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw ParameterError("matrix product: inner dimensions differ");
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  }
  return out;
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw ParameterError("matrix apply: size mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

RowEchelon row_reduce(const Matrix& a) {
  RowEchelon e{a, {}, Matrix::identity(a.rows())};
  Matrix& m = e.reduced;
  Matrix& t = e.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
      for (std::size_t c = 0; c < t.cols(); ++c) std::swap(t(pivot, c), t(row, c));
    }
    Rational inv = 1 / m(row, col);
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t c = 0; c < t.cols(); ++c) t(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
      for (std::size_t c = 0; c < t.cols(); ++c) t(r, c) -= f * t(row, c);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::size_t rank(const Matrix& a) { return row_reduce(a).pivots.size(); }

Rational determinant(Matrix a) {
  if (a.rows() != a.cols()) throw ParameterError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      Rational f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

Matrix null_space(const Matrix& a) {
  RowEchelon e = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix basis(a.cols(), free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    basis(free[j], j) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], j) = -e.reduced(r, free[j]);
  }
  return basis;
}

Matrix column_basis(const Matrix& a) {
  RowEchelon e = row_reduce(a);
  Matrix basis(a.rows(), e.pivots.size());
  for (std::size_t j = 0; j < e.pivots.size(); ++j)
    for (std::size_t r = 0; r < a.rows(); ++r) basis(r, j) = a(r, e.pivots[j]);
  return basis;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  RowEchelon e = row_reduce(a);
  if (e.pivots.size() != a.rows()) return std::nullopt;
  return e.transform;
}

Matrix orthogonal_projector(const Matrix& a) {
  Matrix b = column_basis(a);
  if (b.cols() == 0) return Matrix(a.rows(), a.rows());
  Matrix bt = b.transpose();
  auto gram_inv = inverse(bt * b);
  if (!gram_inv) throw InvariantViolation("Gram matrix of an independent basis is singular");
  return b * (*gram_inv) * bt;
}

LinearSolver::LinearSolver(const Matrix& a)
    : rows_(a.rows()), cols_(a.cols()), echelon_(row_reduce(a)) {}

std::optional<std::vector<Rational>> LinearSolver::solve(const std::vector<Rational>& b) const {
  return solve_module(b, Rational(0), [](const Rational& q) { return sgn(q) == 0; });
}

}  // namespace rumin
