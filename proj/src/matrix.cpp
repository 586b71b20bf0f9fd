#include "ckm/matrix.hpp"

#include <cassert>
#include <utility>

#include "ckm/error.hpp"

namespace ckm {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) fail(ErrorKind::PreconditionViolated, "matrix shape mismatch in product");
  Matrix out(rows_, rhs.cols_);
  Rational tmp;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (ckm::is_zero(a)) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Rational& b = rhs(k, j);
        if (ckm::is_zero(b)) continue;
        tmp = a * b;
        out(i, j) += tmp;
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(ErrorKind::PreconditionViolated, "matrix shape mismatch in sum");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(ErrorKind::PreconditionViolated, "matrix shape mismatch in difference");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

Matrix Matrix::scaled(const Rational& factor) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= factor;
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!ckm::is_zero(x)) return false;
  return true;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && ckm::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead_row, j));
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || ckm::is_zero(m(r, c))) continue;
      Rational f = m(r, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) -= f * m(lead_row, j);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return pivots;
}

}  // namespace

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

std::size_t Matrix::rank() const {
  Matrix m = *this;
  return rref(m).size();
}

std::vector<std::size_t> Matrix::pivot_columns() const {
  Matrix m = *this;
  return rref(m);
}

Matrix Matrix::row_space_basis() const {
  Matrix m = *this;
  auto pivots = rref(m);
  Matrix out(pivots.size(), cols_);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = m(i, j);
  return out;
}

Matrix Matrix::left_null_space() const {
  // x * A = 0  <=>  A^T x^T = 0.
  Matrix t = transposed();
  auto pivots = rref(t);
  std::vector<bool> is_pivot(t.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < t.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix out(free_cols.size(), t.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t f = free_cols[k];
    out(k, f) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) out(k, pivots[i]) = -t(i, f);
  }
  return out;
}

Matrix Matrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  Matrix out(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) out(i, j) = (*this)(row_idx[i], col_idx[j]);
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) fail(ErrorKind::PreconditionViolated, "vstack column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

std::vector<Rational> row_times(std::span<const Rational> row, const Matrix& m) {
  assert(row.size() == m.rows());
  std::vector<Rational> out(m.cols());
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (ckm::is_zero(row[k])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!ckm::is_zero(m(k, j))) out[j] += row[k] * m(k, j);
  }
  return out;
}

}  // namespace ckm
