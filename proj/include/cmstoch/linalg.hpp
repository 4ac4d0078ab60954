#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "cmstoch/rational.hpp"

namespace cmstoch {

// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Rational& fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;
  Matrix transpose() const;
  bool is_symmetric() const;
  Rational min_entry() const;
  Rational max_entry() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& m);
Vec operator*(const Matrix& m, const Vec& x);
// Row vector times matrix: x^T M.
Vec left_multiply(const Vec& x, const Matrix& m);

Rational determinant(const Matrix& m);
// (i, j) cofactor (-1)^{i+j} det(minor_ij).
Rational cofactor(const Matrix& m, std::size_t i, std::size_t j);
std::size_t rank(const Matrix& m);

// Solves A x = b exactly. A may have more rows than columns; the result is
// returned only when the system is consistent and the solution is unique.
std::optional<Vec> solve_unique(const Matrix& a, const Vec& b);

}  // namespace cmstoch
