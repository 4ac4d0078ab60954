#include "cmstoch/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace cmstoch {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    assert(r.size() == cols_);
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    assert(rows[r].size() == m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vec Matrix::column(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

Rational Matrix::min_entry() const {
  return *std::min_element(data_.begin(), data_.end());
}

Rational Matrix::max_entry() const {
  return *std::max_element(data_.begin(), data_.end());
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

Matrix operator*(const Rational& s, const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= s;
  return out;
}

Vec operator*(const Matrix& m, const Vec& x) {
  assert(m.cols() == x.size());
  Vec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

Vec left_multiply(const Vec& x, const Matrix& m) {
  assert(m.rows() == x.size());
  Vec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  }
  return out;
}

namespace {

// In-place reduction to row echelon form. Returns the pivot column of each
// pivot row and the sign of the row permutation.
struct Echelon {
  std::vector<std::size_t> pivot_cols;
  int sign = 1;
};

Echelon row_reduce(Matrix& m) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
      e.sign = -e.sign;
    }
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      if (m(r, col) == 0) continue;
      Rational factor = m(r, col) / m(row, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace

Rational determinant(const Matrix& m) {
  assert(m.is_square());
  if (m.rows() == 0) return 1;
  Matrix work = m;
  Echelon e = row_reduce(work);
  if (e.pivot_cols.size() < m.rows()) return 0;
  Rational det = e.sign;
  for (std::size_t i = 0; i < m.rows(); ++i) det *= work(i, i);
  return det;
}

Rational cofactor(const Matrix& m, std::size_t i, std::size_t j) {
  assert(m.is_square());
  const std::size_t n = m.rows();
  Matrix minor(n - 1, n - 1);
  for (std::size_t r = 0, mr = 0; r < n; ++r) {
    if (r == i) continue;
    for (std::size_t c = 0, mc = 0; c < n; ++c) {
      if (c == j) continue;
      minor(mr, mc++) = m(r, c);
    }
    ++mr;
  }
  Rational d = determinant(minor);
  return (i + j) % 2 == 0 ? d : Rational(-d);
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return row_reduce(work).pivot_cols.size();
}

std::optional<Vec> solve_unique(const Matrix& a, const Vec& b) {
  assert(a.rows() == b.size());
  const std::size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  Echelon e = row_reduce(aug);
  // Inconsistent: a pivot in the augmented column.
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == n) return std::nullopt;
  if (e.pivot_cols.size() != n) return std::nullopt;
  Vec x(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational acc = aug(k, n);
    for (std::size_t c = k + 1; c < n; ++c) acc -= aug(k, c) * x[c];
    x[k] = acc / aug(k, k);
  }
  return x;
}

}  // namespace cmstoch
