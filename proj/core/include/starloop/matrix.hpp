#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace starloop {

using Vector = std::vector<double>;

/// Dense row-major rectangular matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  Vector apply(std::span<const double> v) const;
  double frobenius_norm() const;
  /// Maximum absolute row sum.
  double infinity_norm() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& lhs, const Matrix& rhs);

/// Largest entrywise |lhs - rhs|; throws DimensionError on shape mismatch.
double max_abs_diff(const Matrix& lhs, const Matrix& rhs);

/// A square, not necessarily symmetric, matrix (e.g. a transition matrix).
class SquareMatrix : public Matrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t order, double fill = 0.0) : Matrix(order, order, fill) {}
  /// Throws DimensionError unless m is square.
  explicit SquareMatrix(Matrix m);

  std::size_t order() const noexcept { return rows(); }
};

/// Symmetric matrix stored as its packed lower triangle, so entry (i,j) and
/// (j,i) are the same storage cell.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order) : order_(order), packed_(order * (order + 1) / 2, 0.0) {}
  /// Takes the lower triangle of m; throws DimensionError unless square.
  static SymmetricMatrix from_lower(const Matrix& m);

  std::size_t order() const noexcept { return order_; }

  double operator()(std::size_t i, std::size_t j) const { return packed_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double value) { packed_[index(i, j)] = value; }
  void add(std::size_t i, std::size_t j, double value) { packed_[index(i, j)] += value; }

  SquareMatrix to_dense() const;
  Vector apply(std::span<const double> v) const;
  double frobenius_norm() const;
  double infinity_norm() const;
  bool all_finite() const;

  bool operator==(const SymmetricMatrix&) const = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) noexcept {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

  std::size_t order_ = 0;
  std::vector<double> packed_;
};

struct DiagonalMatrix {
  Vector diagonal;

  std::size_t order() const noexcept { return diagonal.size(); }
  SquareMatrix to_dense() const;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

}  // namespace starloop
