#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wdbc/errors.hpp"

namespace wdbc {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Small problems only (p <= ~600 here),
// so everything is plain loops over contiguous storage.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const Matrix& other) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

// y = A x
Vector matvec(const Matrix& a, const Vector& x);
// C = A B
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

// (A + A^T)/2; accumulated rounding breaks exact symmetry upstream.
Matrix symmetrize(const Matrix& a);

// Lower-triangular L with L L^T = a. Symmetrizes the input first.
// Throws NotPositiveDefinite on a non-positive pivot.
Matrix cholesky(const Matrix& a);

// Solve a x = b for SPD a via Cholesky.
Vector solve_spd(const Matrix& a, const Vector& b);
// Reuse a precomputed factor: solve L L^T x = b.
Vector cholesky_solve(const Matrix& chol_lower, const Vector& b);

// ln det(a) = 2 sum_i ln L_ii for SPD a.
double log_det_spd(const Matrix& a);

// Full inverse of an SPD matrix (needed explicitly for posterior covariances).
Matrix spd_inverse(const Matrix& a);

}  // namespace wdbc
