#include <algorithm>
#include <cmath>
#include <string>

#include "netequil/error.hpp"
#include "netequil/matgraph.hpp"

namespace netequil {
namespace {

void require_nonnegative(const Matrix& a) {
  if (!a.all_finite()) throw Error(ErrorCode::InvalidParameter, "matrix has non-finite entries");
  if (!a.is_nonnegative()) throw Error(ErrorCode::NonNegativityViolated, "matrix has negative entries");
}

// Pattern transients of nonnegative matrices die out by Wielandt's bound
// (n-1)^2 + 1; convergence is not tested before the power exceeds twice that.
double warmup_power(std::size_t n) {
  const double k = static_cast<double>(n > 0 ? n - 1 : 0);
  return 2.0 * (k * k + 1.0);
}

// One normalized squaring step. Returns false when the power vanished.
bool square_step(Matrix& b, double& log_scale) {
  b = multiply(b, b);
  const double nb = b.norm_inf();
  if (nb == 0.0) return false;
  log_scale = 2.0 * log_scale + std::log(nb);
  b = b.scaled(1.0 / nb);
  return true;
}

}  // namespace

double spectral_radius(const Matrix& a, SpectralOptions opt) {
  require_nonnegative(a);
  if (opt.tol <= 0.0 || opt.kmax <= 0) throw Error(ErrorCode::InvalidParameter, "tol and kmax must be positive");
  const double s0 = a.norm_inf();
  if (s0 == 0.0) return 0.0;

  Matrix b = a.scaled(1.0 / s0);
  double log_scale = std::log(s0);  // log ‖A^(2^m)‖_∞
  double prev = s0;
  int quiet_steps = 0;
  const double warmup = warmup_power(a.size());
  for (int m = 1; m <= opt.kmax; ++m) {
    if (!square_step(b, log_scale)) return 0.0;
    const double power = std::ldexp(1.0, m);
    const double est = std::exp(log_scale / power);
    if (power >= warmup && std::fabs(prev - est) <= opt.tol / 4.0) {
      if (++quiet_steps >= 2) return est;
    } else {
      quiet_steps = 0;
    }
    prev = est;
  }
  throw Error(ErrorCode::NoConvergence,
              "spectral radius did not settle within " + std::to_string(opt.kmax) + " squarings");
}

std::vector<double> gelfand_sequence(const Matrix& a, int count) {
  require_nonnegative(a);
  std::vector<double> seq;
  const double s0 = a.norm_inf();
  if (count <= 0) return seq;
  seq.push_back(s0);
  if (s0 == 0.0) {
    seq.resize(static_cast<std::size_t>(count), 0.0);
    return seq;
  }
  Matrix b = a.scaled(1.0 / s0);
  double log_scale = std::log(s0);
  for (int m = 1; m < count; ++m) {
    if (!square_step(b, log_scale)) {
      seq.resize(static_cast<std::size_t>(count), 0.0);
      return seq;
    }
    seq.push_back(std::exp(log_scale / std::ldexp(1.0, m)));
  }
  return seq;
}

double contraction_modulus(const Matrix& w, const Vector& beta, SpectralOptions opt) {
  if (beta.size() != w.size())
    throw Error(ErrorCode::DimensionMismatch, "beta has length " + std::to_string(beta.size()) +
                                                  ", expected " + std::to_string(w.size()));
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (!(beta[i] >= 0.0) || !std::isfinite(beta[i]))
      throw Error(ErrorCode::InvalidParameter, "Lipschitz constants must be finite and nonnegative", i);
  return spectral_radius(w.abs().scale_columns(beta), opt);
}

namespace {

// Left eigenvector residual ‖vM − rv‖_∞.
double left_residual(const Matrix& m, const Vector& v, double r) {
  Vector vm = vec_mat(v, m);
  double res = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) res = std::max(res, std::fabs(vm[i] - r * v[i]));
  return res;
}

void normalize_positive(Vector& v) {
  double s = 0.0;
  for (double& x : v) {
    x = std::max(x, 0.0);
    s += x;
  }
  for (double& x : v) x /= s;
}

// Rayleigh-type root for a unit-sum vector: Σ_j (vM)_j.
double root_from(const Matrix& m, const Vector& v) {
  double s = 0.0;
  for (double x : vec_mat(v, m)) s += x;
  return s;
}

}  // namespace

PerronPair perron_vector(const Matrix& a, Side side, SpectralOptions opt) {
  require_nonnegative(a);
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  if (!is_irreducible(a)) throw Error(ErrorCode::NotIrreducible, "matrix has more than one strongly connected block");
  if (n == 1) return {a(0, 0), Vector{1.0}};

  // A right eigenvector of A is a left eigenvector of A^T.
  const Matrix m = side == Side::Left ? a : a.transpose();
  double r = spectral_radius(a, opt);

  // Solve v(M - rI) = 0 with Σv = 1: the last equation is replaced by the
  // normalization, which keeps the system nonsingular for irreducible M.
  Vector v;
  Vector rhs(n, 0.0);
  rhs[n - 1] = 1.0;
  for (int pass = 0; pass < 3; ++pass) {
    Matrix k = m;
    for (std::size_t i = 0; i < n; ++i) {
      k(i, i) -= r;
      k(i, n - 1) = 1.0;
    }
    try {
      v = linear_solve(k, rhs);
    } catch (const Error&) {
      break;
    }
    normalize_positive(v);
    r = root_from(m, v);
  }

  if (v.size() != n || left_residual(m, v, r) > opt.tol) {
    // Fall back to power iteration on the primitive shift M + I.
    if (v.size() != n) v.assign(n, 1.0 / static_cast<double>(n));
    const Matrix shifted = m + Matrix::identity(n);
    const long max_iter = 1000L * opt.kmax;
    bool ok = false;
    for (long it = 0; it < max_iter; ++it) {
      v = vec_mat(v, shifted);
      normalize_positive(v);
      r = root_from(m, v);
      if (left_residual(m, v, r) <= opt.tol) {
        ok = true;
        break;
      }
    }
    if (!ok) throw Error(ErrorCode::NoConvergence, "Perron vector residual above tolerance");
  }
  return {r, v};
}

}  // namespace netequil
