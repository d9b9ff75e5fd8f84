#include <algorithm>
#include <cmath>
#include <string>

#include "netequil/error.hpp"
#include "netequil/solver.hpp"

namespace netequil {
namespace {

struct Bounds {
  Vector lower, upper;
};

Bounds unit_clamp_bounds(const Network& net) {
  Bounds b;
  for (const auto& f : net.functions()) {
    b.lower.push_back(f.clamped()->lower);
    b.upper.push_back(f.clamped()->upper);
  }
  return b;
}

// A(x): inputs at or above u. B(x): inputs at or below ℓ.
VertexSet at_upper(const Network& net, const Vector& x, const Vector& u) {
  const Vector in = net.inputs(x);
  VertexSet s;
  for (std::size_t j = 0; j < in.size(); ++j)
    if (in[j] >= u[j]) s.push_back(j);
  return s;
}

VertexSet at_lower(const Network& net, const Vector& x, const Vector& l) {
  const Vector in = net.inputs(x);
  VertexSet s;
  for (std::size_t j = 0; j < in.size(); ++j)
    if (in[j] <= l[j]) s.push_back(j);
  return s;
}

VertexSet minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Subsets of `base` by decreasing size, lexicographic within a size.
std::vector<VertexSet> guesses(const VertexSet& base) {
  std::vector<VertexSet> out;
  const std::size_t m = base.size();
  for (std::size_t k = m + 1; k-- > 0;) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      VertexSet s;
      for (std::size_t i : pick) s.push_back(base[i]);
      out.push_back(std::move(s));
      // next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace

bool algorithm1_eligible(const Network& net) {
  for (const auto& f : net.functions())
    if (!f.is_unit_clamp()) return false;
  const Matrix& w = net.w();
  if (!w.is_nonnegative()) return false;
  auto sub = [](const Vector& s) { return std::all_of(s.begin(), s.end(), [](double v) { return v <= 1.0 + 1e-9; }); };
  return sub(w.row_sums()) || sub(w.column_sums());
}

SolveReport solve_algorithm1(const Network& net, double tol) {
  if (!algorithm1_eligible(net))
    throw Error(ErrorCode::PreconditionViolated,
                "Algorithm 1 needs unit clamps with finite bounds and a nonnegative substochastic W");
  const std::size_t n = net.size();
  const Matrix& w = net.w();
  const auto [l, u] = unit_clamp_bounds(net);

  SolveReport rep;
  rep.method = Method::Algorithm1;
  rep.certificate = uniqueness_certificate(net);

  if (at_upper(net, u, u).size() == n) {
    rep.x = u;
    rep.residual = net.residual(u);
    return rep;
  }
  const VertexSet b_low = at_lower(net, l, l);
  if (b_low.size() == n) {
    rep.x = l;
    rep.residual = net.residual(l);
    return rep;
  }

  for (const VertexSet& p : guesses(b_low)) {
    ++rep.outer_guesses;
    Vector uhat = u;
    for (std::size_t j : p) uhat[j] = l[j];
    VertexSet a = minus(at_upper(net, uhat, u), p);

    Vector x;
    bool singular = false;
    std::vector<VertexSet> trace{a};
    for (std::size_t step = 0; step < n; ++step) {
      // Fixed agents: A at u, P at ℓ. Solve the rest.
      Vector z(n, 0.0);
      for (std::size_t j : a) z[j] = u[j];
      for (std::size_t j : p) z[j] = l[j];
      VertexSet fixed;
      std::set_union(a.begin(), a.end(), p.begin(), p.end(), std::back_inserter(fixed));
      const VertexSet free = complement(n, fixed);
      x = z;
      if (!free.empty()) {
        const Vector in = net.inputs(z);
        Vector rhs(free.size());
        for (std::size_t q = 0; q < free.size(); ++q) rhs[q] = in[free[q]];
        const Matrix sys = Matrix::identity(free.size()) - restrict_to(w, free);
        try {
          const Vector xf = linear_solve(sys, rhs);
          for (std::size_t q = 0; q < free.size(); ++q) x[free[q]] = xf[q];
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Singular) throw;
          singular = true;
          break;
        }
      }
      ++rep.iterations;
      VertexSet next = minus(at_upper(net, x, u), p);
      trace.push_back(next);
      if (next == a) break;
      a = std::move(next);
    }
    if (singular) continue;
    const double res = net.residual(x);
    if (res <= tol) {
      rep.x = std::move(x);
      rep.residual = res;
      rep.guess = p;
      rep.active_sets = std::move(trace);
      std::string guess = "winning guess P = {";
      for (std::size_t i = 0; i < p.size(); ++i) guess += (i ? "," : "") + std::to_string(p[i] + 1);
      rep.notes.push_back(guess + "}");
      return rep;
    }
  }
  throw Error(ErrorCode::NoEquilibriumFound,
              "all " + std::to_string(rep.outer_guesses) + " guesses exhausted without an equilibrium");
}

bool lp_verify(const Network& net, const Vector& x, double tol) {
  if (x.size() != net.size()) throw Error(ErrorCode::DimensionMismatch, "x has the wrong length");
  if (!algorithm1_eligible(net))
    throw Error(ErrorCode::PreconditionViolated, "LP verification needs a bounded-identity network");
  const auto [l, u] = unit_clamp_bounds(net);
  const Vector in = net.inputs(x);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < l[j] - tol || x[j] > u[j] + tol) return false;
    if (std::max(in[j] - x[j], l[j] - x[j]) < -tol) return false;
    const double clamped = std::min(std::max(in[j], l[j]), u[j]);
    if (std::fabs(x[j] - u[j]) > tol && std::fabs(x[j] - clamped) > tol) return false;
  }
  return true;
}

}  // namespace netequil
