#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ckm/rational.hpp"

namespace ckm {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(const Rational& factor) const;
  Matrix transposed() const;

  bool is_zero() const;
  bool operator==(const Matrix& rhs) const = default;

  std::optional<Matrix> inverse() const;
  std::size_t rank() const;

  /// Reduced row echelon form with zero rows removed (a basis of the row space).
  Matrix row_space_basis() const;

  /// Basis (as rows) of { x : x * this = 0 }.
  Matrix left_null_space() const;

  /// Indices of pivot columns in the reduced row echelon form.
  std::vector<std::size_t> pivot_columns() const;

  Matrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rows of `top` followed by rows of `bottom`; column counts must agree.
Matrix vstack(const Matrix& top, const Matrix& bottom);

/// row * m for a row vector given as a span.
std::vector<Rational> row_times(std::span<const Rational> row, const Matrix& m);

}  // namespace ckm
