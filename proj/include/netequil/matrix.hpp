#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace netequil {

using Vector = std::vector<double>;

/// Dense square matrix, row-major. Entry (i, j) is the influence of agent i
/// on agent j; vectors act from the left (x ↦ xA).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix diagonal(std::span<const double> d);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return a_; }
  std::vector<Vector> to_rows() const;

  Matrix transpose() const;
  Matrix abs() const;
  Matrix scaled(double s) const;
  /// A·diag(d): scales column j by d[j].
  Matrix scale_columns(std::span<const double> d) const;
  /// diag(d)·A: scales row i by d[i].
  Matrix scale_rows(std::span<const double> d) const;

  bool is_nonnegative() const;
  bool all_finite() const;
  double max_abs() const;

  Vector row_sums() const;
  Vector column_sums() const;
  /// max_i Σ_j |a_ij|
  double norm_inf() const;
  /// Operator norm of x ↦ xA under the sup norm on row vectors: max_j Σ_i |a_ij|.
  double norm_row_action() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Dense product; the OpenMP kernel parallelizes over output rows.
Matrix multiply(const Matrix& a, const Matrix& b);
/// Serial reference kernel kept for testing and benchmarking.
Matrix multiply_serial(const Matrix& a, const Matrix& b);

/// Row vector times matrix: xA.
Vector vec_mat(std::span<const double> x, const Matrix& a);
/// Matrix times column vector: Ax.
Vector mat_vec(const Matrix& a, std::span<const double> x);

double norm_inf(std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
Vector hadamard(std::span<const double> x, std::span<const double> y);
double dot(std::span<const double> x, std::span<const double> y);

}  // namespace netequil
