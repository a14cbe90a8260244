#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rumin/rational.hpp"

namespace rumin {

/// Dense row-major matrix over Q. Sizes here are tiny (at most C(2n+1, k)).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  bool operator==(const Matrix& other) const = default;

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  /// Applies the matrix to a vector of module elements (e.g. polynomials).
  /// T must support `T + T` and `T * Rational`, and be default-constructible as zero.
  template <class T>
  std::vector<T> apply_to(const std::vector<T>& v, const T& zero) const {
    std::vector<T> out(rows_, zero);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        const Rational& a = (*this)(r, c);
        if (sgn(a) != 0) out[r] += v[c] * a;
      }
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;                     // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
  Matrix transform;                   // E with E * A = reduced
};

RowEchelon row_reduce(const Matrix& a);
std::size_t rank(const Matrix& a);
Rational determinant(Matrix a);

/// Columns spanning the null space of `a`.
Matrix null_space(const Matrix& a);

/// Linearly independent columns spanning the column space of `a`.
Matrix column_basis(const Matrix& a);

/// Orthogonal projector onto the column span of `a` (standard inner product).
Matrix orthogonal_projector(const Matrix& a);

std::optional<Matrix> inverse(const Matrix& a);

/// Reusable exact solver for A x = b. `solve` returns a particular solution
/// (free variables zero) or nullopt when the system is inconsistent.
class LinearSolver {
 public:
  LinearSolver() = default;
  explicit LinearSolver(const Matrix& a);

  std::size_t rank() const noexcept { return echelon_.pivots.size(); }
  std::size_t unknowns() const noexcept { return cols_; }
  std::size_t equations() const noexcept { return rows_; }

  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

  /// Same as `solve` but for right-hand sides with module-valued entries.
  /// `is_zero` decides consistency of the eliminated rows.
  template <class T, class IsZero>
  std::optional<std::vector<T>> solve_module(const std::vector<T>& b, const T& zero,
                                             IsZero is_zero) const {
    std::vector<T> c = echelon_.transform.apply_to(b, zero);
    for (std::size_t r = rank(); r < rows_; ++r) {
      if (!is_zero(c[r])) return std::nullopt;
    }
    std::vector<T> x(cols_, zero);
    for (std::size_t r = 0; r < rank(); ++r) x[echelon_.pivots[r]] = c[r];
    return x;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  RowEchelon echelon_;
};

}  // namespace rumin
