#include <algorithm>
#include <cmath>
#include <string>

#include "netequil/error.hpp"
#include "netequil/solver.hpp"

namespace netequil {
namespace {

bool unit_gain(const InteractionFunction& f) {
  const auto* c = f.clamped();
  return c && c->offset == 0.0 && c->gain == 1.0;
}

// Re-solve the agents in `d` with everything else held at y.
bool resolve_downstream(const Network& net, const VertexSet& d, Vector& y, double tol) {
  if (d.empty()) return true;
  Vector held = y;
  for (std::size_t j : d) held[j] = 0.0;
  const Vector in = net.inputs(held);
  Vector shock(d.size());
  std::vector<InteractionFunction> fs;
  for (std::size_t q = 0; q < d.size(); ++q) {
    shock[q] = in[d[q]];
    fs.push_back(net.function(d[q]));
  }
  const Network sub(restrict_to(net.w(), d), std::move(fs), std::move(shock));
  try {
    SolveOptions opt;
    opt.tol = tol / 10.0;
    const auto rep = solve_tarski(sub, Direction::Above, opt);
    for (std::size_t q = 0; q < d.size(); ++q) y[d[q]] = rep.x[q];
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace

ProbeResult multiplicity_probe(const Network& net, const Vector& x_star, double tol) {
  const std::size_t n = net.size();
  if (x_star.size() != n) throw Error(ErrorCode::DimensionMismatch, "x* has the wrong length");
  for (std::size_t i = 0; i < n; ++i)
    if (!unit_gain(net.function(i)))
      throw Error(ErrorCode::PreconditionViolated, "multiplicity probe needs unit-gain clamp functions", i);
  if (!net.w().is_nonnegative()) throw Error(ErrorCode::PreconditionViolated, "multiplicity probe needs W >= 0");
  const double r0 = net.residual(x_star);
  if (r0 > tol) throw Error(ErrorCode::ResidualTooLarge, "x* residual " + std::to_string(r0) + " exceeds tol");

  const Matrix& w = net.w();
  const Vector in = net.inputs(x_star);
  const auto cond = scc_condensation(w);
  for (std::size_t b : cond.topo_order) {
    const VertexSet& s = cond.blocks[b];
    const Matrix ws = restrict_to(w, s);
    if (std::fabs(spectral_radius(ws) - 1.0) > kSpectralUnitTol) continue;

    // Every agent of S must sit in the linear piece of its clamp.
    bool linear = true;
    for (std::size_t j : s) {
      const auto* c = net.function(j).clamped();
      if (std::fabs(x_star[j] - in[j]) > tol || in[j] < c->lower - tol || in[j] > c->upper + tol) {
        linear = false;
        break;
      }
    }
    if (!linear) continue;

    const Vector e = perron_vector(ws, Side::Left).vector;
    MultiplicityCertificate cert;
    cert.scc = s;
    cert.direction.assign(n, 0.0);
    double lo = -kInf, hi = kInf;
    for (std::size_t q = 0; q < s.size(); ++q) {
      const std::size_t j = s[q];
      const auto* c = net.function(j).clamped();
      cert.direction[j] = e[q];
      lo = std::max(lo, (c->lower - x_star[j]) / e[q]);
      hi = std::min(hi, (c->upper - x_star[j]) / e[q]);
    }
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
    if (hi - lo <= tol) continue;
    cert.t_lo = lo;
    cert.t_hi = hi;

    double t;
    if (std::isfinite(lo) && std::isfinite(hi)) {
      t = 0.5 * (lo + hi);
      if (std::fabs(t) < 0.25 * (hi - lo)) t = hi >= -lo ? 0.5 * hi : 0.5 * lo;
    } else {
      t = std::isfinite(hi) ? (hi > 0.0 ? 0.5 * hi : -1.0) : (lo < 0.0 ? 0.5 * lo : 1.0);
    }

    Vector y = x_star;
    for (std::size_t j : s) y[j] += t * cert.direction[j];
    cert.affected = reachable_from(w, s);
    if (!resolve_downstream(net, cert.affected, y, tol)) continue;
    cert.witness_residual = net.residual(y);
    if (cert.witness_residual > tol) continue;
    cert.witness = std::move(y);
    cert.witness_t = t;
    return cert;
  }
  return Unique{};
}

}  // namespace netequil
