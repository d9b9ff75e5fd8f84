#pragma once

// Shared generators and Eigen-based reference computations for the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "netequil/matgraph.hpp"
#include "netequil/netmodel.hpp"
#include "netequil/rng.hpp"

namespace testing {

using netequil::InteractionFunction;
using netequil::Matrix;
using netequil::Network;
using netequil::Vector;
using Rng = netequil::Xoshiro256;

inline Eigen::MatrixXd to_eigen(const Matrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

/// max |λ| from a dense general eigensolver.
inline double eigen_spectral_radius(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
  double r = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r = std::max(r, std::abs(es.eigenvalues()[i]));
  return r;
}

/// x with xA = b via a QR solve of A^T.
inline Vector eigen_row_solve(const Matrix& a, const Vector& b) {
  const Eigen::MatrixXd at = to_eigen(a).transpose();
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::VectorXd x = at.colPivHouseholderQr().solve(rhs);
  return Vector(x.data(), x.data() + x.size());
}

/// Left eigenvector of A for the eigenvalue of largest real part, unit sum.
inline Vector eigen_left_perron(const Matrix& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a).transpose(), true);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  v /= v.sum();
  return Vector(v.data(), v.data() + v.size());
}

inline double max_diff(const Vector& a, const Vector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

inline bool leq(const Vector& a, const Vector& b, double slack) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i] + slack) return false;
  return true;
}

inline Matrix random_nonnegative(std::size_t n, Rng& rng, double density = 0.6, double scale = 1.0) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng.uniform() < density) m(i, j) = scale * rng.uniform();
  return m;
}

/// Row-stochastic with zero diagonal; every row has at least one entry.
inline Matrix random_row_stochastic(std::size_t n, Rng& rng, double density = 0.6) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && rng.uniform() < density) sum += (m(i, j) = 0.05 + rng.uniform());
    if (sum == 0.0 && n > 1) {
      std::size_t j = (i + 1 + rng.below(n - 1)) % n;
      sum = m(i, j) = 1.0;
    }
    if (n == 1) m(0, 0) = sum = 1.0;
    for (std::size_t j = 0; j < n; ++j) m(i, j) /= sum;
  }
  return m;
}

/// Irreducible row-stochastic: a random cycle through every vertex plus
/// random extra edges.
inline Matrix random_irreducible_stochastic(std::size_t n, Rng& rng, double density = 0.4) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  Matrix m(n);
  for (std::size_t k = 0; k < n; ++k) m(perm[k], perm[(k + 1) % n]) = 0.05 + rng.uniform();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && rng.uniform() < density) m(i, j) += rng.uniform();
  const Vector rs = m.row_sums();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) /= rs[i];
  return m;
}

/// Bounded-identity network: row-stochastic W, random clamps, continuous shocks.
inline Network random_bounded_identity(std::size_t n, Rng& rng) {
  const Matrix w = random_row_stochastic(n, rng);
  std::vector<InteractionFunction> f;
  Vector eps(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = rng.uniform(-1.0, 0.5);
    const double hi = lo + rng.uniform(0.2, 3.0);
    f.push_back(InteractionFunction::bounded_identity(lo, hi));
    eps[j] = rng.uniform(-1.5, 1.5);
  }
  return Network(w, std::move(f), std::move(eps));
}

/// Lipschitz, monotone clamped-affine functions with r(|W| diag β) < 1.
inline Network random_contracting(std::size_t n, Rng& rng, bool signed_weights = true) {
  Matrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng.uniform() < 0.6) w(i, j) = (signed_weights ? rng.uniform(-1.0, 1.0) : rng.uniform());
  std::vector<InteractionFunction> f;
  Vector beta(n);
  for (std::size_t j = 0; j < n; ++j) {
    beta[j] = rng.uniform(0.2, 1.5);
    netequil::ClampedAffine c{rng.uniform(-1.0, 1.0), beta[j], -netequil::kInf, netequil::kInf};
    if (rng.uniform() < 0.5) {
      c.lower = rng.uniform(-3.0, 0.0);
      c.upper = c.lower + rng.uniform(0.5, 5.0);
    }
    f.push_back(c);
  }
  const double rho = netequil::contraction_modulus(w, beta);
  const double target = rng.uniform(0.3, 0.95);
  if (rho > 0.0) w = w.scaled(target / rho);
  Vector eps(n);
  for (double& e : eps) e = rng.uniform(-2.0, 2.0);
  return Network(w, std::move(f), std::move(eps));
}

}  // namespace testing
