#include "starloop/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "starloop/errors.hpp"

namespace starloop {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::LoopsNotSupported: return "LoopsNotSupported";
    case ErrorKind::ZeroStrength: return "ZeroStrength";
    case ErrorKind::NumericalError: return "NumericalError";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::InvalidVector: return "InvalidVector";
    case ErrorKind::DegenerateStar: return "DegenerateStar";
    case ErrorKind::NotEquitable: return "NotEquitable";
    case ErrorKind::InvalidReduction: return "InvalidReduction";
    case ErrorKind::UnsupportedMode: return "UnsupportedMode";
    case ErrorKind::NoLoop: return "NoLoop";
    case ErrorKind::InvalidEnlargement: return "InvalidEnlargement";
    case ErrorKind::NothingToDo: return "NothingToDo";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::apply(std::span<const double> v) const {
  if (v.size() != cols_)
    throw Error(ErrorKind::DimensionError, "vector length " + std::to_string(v.size()) +
                                               " does not match " + std::to_string(cols_) + " columns");
  Vector out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(row(i), v);
  return out;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

double Matrix::infinity_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (double x : row(i)) s += std::abs(x);
    best = std::max(best, s);
  }
  return best;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows())
    throw Error(ErrorKind::DimensionError, "cannot multiply " + std::to_string(lhs.rows()) + "x" +
                                               std::to_string(lhs.cols()) + " by " +
                                               std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols()));
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

double max_abs_diff(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw Error(ErrorKind::DimensionError, "shape mismatch in comparison");
  double best = 0.0;
  auto a = lhs.data();
  auto b = rhs.data();
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

SquareMatrix::SquareMatrix(Matrix m) : Matrix(std::move(m)) {
  if (rows() != cols())
    throw Error(ErrorKind::DimensionError,
                "matrix is " + std::to_string(rows()) + "x" + std::to_string(cols()) + ", not square");
}

SymmetricMatrix SymmetricMatrix::from_lower(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionError, "symmetric matrix must be square");
  SymmetricMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) s.set(i, j, m(i, j));
  return s;
}

SquareMatrix SymmetricMatrix::to_dense() const {
  SquareMatrix d(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) d(i, j) = (*this)(i, j);
  return d;
}

Vector SymmetricMatrix::apply(std::span<const double> v) const {
  if (v.size() != order_) throw Error(ErrorKind::DimensionError, "vector length does not match matrix order");
  Vector out(order_, 0.0);
  for (std::size_t i = 0; i < order_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < order_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double x = (*this)(i, j);
      s += (i == j ? 1.0 : 2.0) * x * x;
    }
  return std::sqrt(s);
}

double SymmetricMatrix::infinity_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < order_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < order_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool SymmetricMatrix::all_finite() const {
  return std::all_of(packed_.begin(), packed_.end(), [](double x) { return std::isfinite(x); });
}

SquareMatrix DiagonalMatrix::to_dense() const {
  SquareMatrix d(diagonal.size());
  for (std::size_t i = 0; i < diagonal.size(); ++i) d(i, i) = diagonal[i];
  return d;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

}  // namespace starloop
