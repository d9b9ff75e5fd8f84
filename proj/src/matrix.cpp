#include "netequil/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "netequil/error.hpp"

namespace netequil {

Matrix::Matrix(std::size_t n, double fill) : n_(n), a_(n * n, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix literal is not square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  Matrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i + 1) + " has wrong length", i);
    std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + static_cast<std::ptrdiff_t>(i * m.n_));
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::vector<Vector> Matrix::to_rows() const {
  std::vector<Vector> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
  return rows;
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::abs() const {
  Matrix m = *this;
  for (double& v : m.a_) v = std::fabs(v);
  return m;
}

Matrix Matrix::scaled(double s) const {
  Matrix m = *this;
  for (double& v : m.a_) v *= s;
  return m;
}

Matrix Matrix::scale_columns(std::span<const double> d) const {
  if (d.size() != n_) throw Error(ErrorCode::DimensionMismatch, "column scale length");
  Matrix m = *this;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) *= d[j];
  return m;
}

Matrix Matrix::scale_rows(std::span<const double> d) const {
  if (d.size() != n_) throw Error(ErrorCode::DimensionMismatch, "row scale length");
  Matrix m = *this;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) *= d[i];
  return m;
}

bool Matrix::is_nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return v >= 0.0; });
}

bool Matrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

Vector Matrix::row_sums() const {
  Vector s(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s[i] += (*this)(i, j);
  return s;
}

Vector Matrix::column_sums() const {
  Vector s(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s[j] += (*this)(i, j);
  return s;
}

double Matrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += std::fabs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::norm_row_action() const {
  Vector s(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s[j] += std::fabs((*this)(i, j));
  return s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  Matrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  Matrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
  return c;
}

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  // Small products are dominated by thread start-up.
  if (n < 64) return multiply_serial(a, b);
  Matrix c(n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector vec_mat(std::span<const double> x, const Matrix& a) {
  const std::size_t n = a.size();
  if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector-matrix product");
  Vector y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) y[j] += xi * a(i, j);
  }
  return y;
}

Vector mat_vec(const Matrix& a, std::span<const double> x) {
  const std::size_t n = a.size();
  if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  Vector y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += a(i, j) * x[j];
  return y;
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference");
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::fabs(x[i] - y[i]));
  return m;
}

Vector hadamard(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "hadamard product");
  Vector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] * y[i];
  return z;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace netequil
