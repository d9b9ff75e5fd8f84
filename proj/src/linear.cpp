#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netequil/error.hpp"
#include "netequil/matgraph.hpp"

namespace netequil {

Vector linear_solve(const Matrix& a, const Vector& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  if (n == 0) return {};

  // xA = b  <=>  A^T x^T = b^T
  Matrix m = a.transpose();
  Vector rhs = b;
  const double scale = a.max_abs();
  const double threshold = kPivotRelTol * scale;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
    if (scale == 0.0 || std::fabs(m(p, k)) < threshold)
      throw Error(ErrorCode::Singular, "pivot " + std::to_string(k + 1) + " below threshold", k);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(rhs[k], rhs[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  Vector x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m(k, j) * x[j];
    x[k] = s / m(k, k);
  }
  return x;
}

GeneralSolution solve_general(const Matrix& a, const Vector& b, double consistency_tol) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  GeneralSolution out;
  if (n == 0) {
    out.consistent = true;
    return out;
  }

  // Full-pivot elimination on A^T y = b^T.
  Matrix m = a.transpose();
  Vector rhs = b;
  std::vector<std::size_t> col(n);
  std::iota(col.begin(), col.end(), 0);
  const double threshold = kPivotRelTol * std::max(a.max_abs(), 1e-300);

  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::fabs(m(i, j)) > best) {
          best = std::fabs(m(i, j));
          pr = i;
          pc = j;
        }
    if (best < threshold) break;
    for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pr, j));
    std::swap(rhs[k], rhs[pr]);
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, k), m(i, pc));
    std::swap(col[k], col[pc]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      rhs[i] -= f * rhs[k];
    }
    ++rank;
  }
  out.rank = rank;

  // Back substitution for pivot variables given values of the free ones.
  auto back_substitute = [&](const Vector& r, const Vector& free_values) {
    Vector y(n, 0.0);
    for (std::size_t k = rank; k < n; ++k) y[k] = free_values[k - rank];
    for (std::size_t k = rank; k-- > 0;) {
      double s = r[k];
      for (std::size_t j = k + 1; j < n; ++j) s -= m(k, j) * y[j];
      y[k] = s / m(k, k);
    }
    Vector x(n);
    for (std::size_t k = 0; k < n; ++k) x[col[k]] = y[k];
    return x;
  };

  const std::size_t nfree = n - rank;
  out.particular = back_substitute(rhs, Vector(nfree, 0.0));
  for (std::size_t f = 0; f < nfree; ++f) {
    Vector unit(nfree, 0.0);
    unit[f] = 1.0;
    out.null_basis.push_back(back_substitute(Vector(n, 0.0), unit));
  }

  const Vector check = vec_mat(out.particular, a);
  const double residual = max_abs_diff(check, b);
  out.consistent = residual <= consistency_tol * std::max(1.0, norm_inf(b));
  return out;
}

}  // namespace netequil
