#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "netequil/error.hpp"
#include "netequil/matgraph.hpp"
#include "netequil/oracle.hpp"
#include "netequil/rng.hpp"

namespace netequil {
namespace {

constexpr double kSameTol = 1e-8;

struct Setup {
  std::size_t n;
  Vector lower, upper;
  std::size_t patterns;
};

Setup prepare(const Network& net) {
  const std::size_t n = net.size();
  if (n > kMaxEnumerate)
    throw Error(ErrorCode::TooLarge, "enumeration is capped at n = " + std::to_string(kMaxEnumerate) + ", got " +
                                         std::to_string(n));
  Setup s{n, {}, {}, 1};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = net.function(i);
    if (!f.is_unit_clamp())
      throw Error(ErrorCode::PreconditionViolated, "enumeration needs unit clamps with finite bounds", i);
    s.lower.push_back(f.clamped()->lower);
    s.upper.push_back(f.clamped()->upper);
    s.patterns *= 3;
  }
  return s;
}

// Parameter interval for a·t ≥ b constraints.
struct Interval {
  double lo = -kInf, hi = kInf;
  bool empty = false;

  void at_least(double a, double b) {
    if (std::fabs(a) < 1e-14) {
      if (b > 1e-12) empty = true;
    } else if (a > 0.0) {
      lo = std::max(lo, b / a);
    } else {
      hi = std::min(hi, b / a);
    }
  }
};

struct Found {
  std::vector<Vector> points;
  std::vector<EquilibriumFamily> families;
};

bool close(const Vector& a, const Vector& b, double tol) { return max_abs_diff(a, b) <= tol; }

// Feasible parameter box of x(t) = x + t·d under the pattern's constraints.
Interval feasible(const Network& net, const Setup& s, const std::vector<Tag>& tags, const Vector& x,
                  const Vector& d, double tol) {
  const Vector in = net.inputs(x);
  const Vector dw = vec_mat(d, net.w());
  Interval box;
  for (std::size_t j = 0; j < s.n; ++j) {
    switch (tags[j]) {
      case Tag::Interior:
        box.at_least(d[j], s.lower[j] - x[j]);
        box.at_least(-d[j], x[j] - s.upper[j]);
        break;
      case Tag::Upper: box.at_least(dw[j], s.upper[j] - tol - in[j]); break;
      case Tag::Lower: box.at_least(-dw[j], in[j] - s.lower[j] - tol); break;
    }
  }
  if (box.lo > box.hi) box.empty = true;
  return box;
}

bool boundary_ok(const Setup& s, const std::vector<Tag>& tags, const Vector& x, const Vector& in, double tol) {
  for (std::size_t j = 0; j < s.n; ++j) {
    switch (tags[j]) {
      case Tag::Upper:
        if (in[j] < s.upper[j] - tol) return false;
        break;
      case Tag::Lower:
        if (in[j] > s.lower[j] + tol) return false;
        break;
      case Tag::Interior:
        if (x[j] < s.lower[j] - tol || x[j] > s.upper[j] + tol) return false;
        break;
    }
  }
  return true;
}

void canonicalize(EquilibriumFamily& fam, const Network& net, const Setup& s, double tol) {
  Vector& d = fam.directions.front();
  const double scale = norm_inf(d);
  double sign = 1.0;
  for (double v : d)
    if (std::fabs(v) > 1e-12 * scale) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  for (double& v : d) v *= sign / scale;
  const Interval box = feasible(net, s, fam.pattern, fam.base, d, tol);
  fam.base = fam.at(box.lo);
  fam.t_lo = 0.0;
  fam.t_hi = box.hi - box.lo;
}

void examine(const Network& net, const Setup& s, std::size_t code, double tol, Found& out) {
  std::vector<Tag> tags(s.n);
  VertexSet interior;
  Vector z(s.n, 0.0);
  for (std::size_t j = 0; j < s.n; ++j) {
    const std::size_t digit = code % 3;
    code /= 3;
    tags[j] = static_cast<Tag>(digit);
    if (tags[j] == Tag::Lower) z[j] = s.lower[j];
    if (tags[j] == Tag::Upper) z[j] = s.upper[j];
    if (tags[j] == Tag::Interior) interior.push_back(j);
  }

  auto accept_point = [&](const Vector& x) {
    if (boundary_ok(s, tags, x, net.inputs(x), tol) && net.residual(x) <= tol) out.points.push_back(x);
  };

  if (interior.empty()) {
    accept_point(z);
    return;
  }

  const Vector in = net.inputs(z);
  Vector rhs(interior.size());
  for (std::size_t q = 0; q < interior.size(); ++q) rhs[q] = in[interior[q]];
  const Matrix block = Matrix::identity(interior.size()) - restrict_to(net.w(), interior);
  const auto sol = solve_general(block, rhs, 1e-9);
  if (!sol.consistent) return;

  Vector x = z;
  for (std::size_t q = 0; q < interior.size(); ++q) x[interior[q]] = sol.particular[q];
  if (sol.null_basis.empty()) {
    accept_point(x);
    return;
  }

  EquilibriumFamily fam;
  fam.pattern = tags;
  fam.base = x;
  for (const Vector& v : sol.null_basis) {
    Vector d(s.n, 0.0);
    for (std::size_t q = 0; q < interior.size(); ++q) d[interior[q]] = v[q];
    fam.directions.push_back(std::move(d));
  }

  if (fam.directions.size() > 1) {
    // Box left unexplored; keep the family only when its base is feasible.
    if (boundary_ok(s, tags, x, net.inputs(x), tol) && net.residual(x) <= tol) out.families.push_back(std::move(fam));
    return;
  }

  const Interval box = feasible(net, s, tags, x, fam.directions.front(), tol);
  if (box.empty || !std::isfinite(box.lo) || !std::isfinite(box.hi)) return;
  if (box.hi - box.lo <= tol) {
    accept_point(fam.at(0.5 * (box.lo + box.hi)));
    return;
  }
  canonicalize(fam, net, s, tol);
  out.families.push_back(std::move(fam));
}

bool lexless(const Vector& a, const Vector& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

bool on_family(const EquilibriumFamily& fam, const Vector& p) {
  if (!fam.t_hi || fam.directions.size() != 1) return false;
  const Vector& d = fam.directions.front();
  std::size_t k = 0;
  for (std::size_t j = 1; j < d.size(); ++j)
    if (std::fabs(d[j]) > std::fabs(d[k])) k = j;
  const double t = (p[k] - fam.base[k]) / d[k];
  if (t < -kSameTol || t > *fam.t_hi + kSameTol) return false;
  return close(fam.at(t), p, kSameTol);
}

bool same_family(const EquilibriumFamily& a, const EquilibriumFamily& b) {
  if (a.directions.size() != b.directions.size() || !close(a.base, b.base, kSameTol)) return false;
  for (std::size_t i = 0; i < a.directions.size(); ++i)
    if (!close(a.directions[i], b.directions[i], kSameTol)) return false;
  if (a.t_hi.has_value() != b.t_hi.has_value()) return false;
  return !a.t_hi || std::fabs(*a.t_hi - *b.t_hi) <= kSameTol;
}

EquilibriumSet finish(Found found) {
  EquilibriumSet out;
  std::sort(found.families.begin(), found.families.end(), [](const auto& a, const auto& b) {
    if (a.base != b.base) return lexless(a.base, b.base);
    return lexless(a.directions.front(), b.directions.front());
  });
  for (auto& fam : found.families) {
    bool dup = std::any_of(out.families.begin(), out.families.end(),
                           [&](const auto& kept) { return same_family(kept, fam); });
    if (!dup) out.families.push_back(std::move(fam));
  }
  std::sort(found.points.begin(), found.points.end(), lexless);
  for (auto& p : found.points) {
    bool dup = std::any_of(out.points.begin(), out.points.end(), [&](const Vector& q) { return close(p, q, kSameTol); });
    dup = dup || std::any_of(out.families.begin(), out.families.end(), [&](const auto& f) { return on_family(f, p); });
    if (!dup) out.points.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Vector EquilibriumFamily::at(double t) const {
  Vector x = base;
  const Vector& d = directions.front();
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += t * d[j];
  return x;
}

EquilibriumSet enumerate_equilibria_serial(const Network& net, double tol) {
  const Setup s = prepare(net);
  Found found;
  for (std::size_t code = 0; code < s.patterns; ++code) examine(net, s, code, tol, found);
  return finish(std::move(found));
}

EquilibriumSet enumerate_equilibria(const Network& net, double tol) {
  const Setup s = prepare(net);
  Found found;
#pragma omp parallel
  {
    Found local;
#pragma omp for schedule(dynamic, 256) nowait
    for (long long code = 0; code < static_cast<long long>(s.patterns); ++code)
      examine(net, s, static_cast<std::size_t>(code), tol, local);
#pragma omp critical(netequil_enumerate_merge)
    {
      for (auto& p : local.points) found.points.push_back(std::move(p));
      for (auto& f : local.families) found.families.push_back(std::move(f));
    }
  }
  return finish(std::move(found));
}

std::vector<Vector> grid_search(const Network& net, const Vector& lower, const Vector& upper,
                                std::size_t resolution, double tol) {
  const std::size_t n = net.size();
  if (n > 3) throw Error(ErrorCode::TooLarge, "grid search is limited to n <= 3");
  if (lower.size() != n || upper.size() != n) throw Error(ErrorCode::DimensionMismatch, "box has the wrong length");
  if (resolution < 2) throw Error(ErrorCode::InvalidParameter, "resolution must be at least 2");

  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= resolution;
  auto point = [&](std::size_t idx) {
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = idx % resolution;
      idx /= resolution;
      x[j] = lower[j] + (upper[j] - lower[j]) * static_cast<double>(k) / static_cast<double>(resolution - 1);
    }
    return x;
  };
  std::vector<double> res(total);
  for (std::size_t idx = 0; idx < total; ++idx) res[idx] = net.residual(point(idx));

  std::vector<Vector> found;
  std::size_t stride = 1;
  std::vector<std::size_t> strides(n);
  for (std::size_t j = 0; j < n; ++j) {
    strides[j] = stride;
    stride *= resolution;
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    bool minimum = true;
    for (std::size_t j = 0; j < n && minimum; ++j) {
      const std::size_t k = (idx / strides[j]) % resolution;
      if (k > 0 && res[idx - strides[j]] < res[idx]) minimum = false;
      if (k + 1 < resolution && res[idx + strides[j]] < res[idx]) minimum = false;
    }
    if (!minimum) continue;
    // damped refinement x ← (x + Tx)/2
    Vector x = point(idx);
    for (int step = 0; step < 500 && net.residual(x) > tol; ++step) {
      const Vector tx = net.apply(x);
      for (std::size_t j = 0; j < n; ++j) x[j] = 0.5 * (x[j] + tx[j]);
    }
    if (net.residual(x) > tol) continue;
    bool inside = true;
    for (std::size_t j = 0; j < n; ++j) inside = inside && x[j] >= lower[j] - tol && x[j] <= upper[j] + tol;
    if (!inside) continue;
    if (std::none_of(found.begin(), found.end(), [&](const Vector& q) { return close(q, x, 1e-6); }))
      found.push_back(std::move(x));
  }
  std::sort(found.begin(), found.end(), lexless);
  return found;
}

std::vector<Vector> draw_shocks(const ShockSampler& sampler, std::size_t n, std::size_t trials, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<Vector> shocks;
  shocks.reserve(trials);
  if (const auto* c = std::get_if<ContinuousUniform>(&sampler)) {
    if (c->lower.size() != n || c->upper.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "sampler box has the wrong length");
    for (std::size_t t = 0; t < trials; ++t) {
      Vector e(n);
      for (std::size_t j = 0; j < n; ++j) e[j] = rng.uniform(c->lower[j], c->upper[j]);
      shocks.push_back(std::move(e));
    }
  } else {
    const auto& d = std::get<DiscreteUniform>(sampler);
    if (d.support.empty()) throw Error(ErrorCode::InvalidParameter, "discrete sampler needs support points");
    for (const auto& p : d.support)
      if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "support point has the wrong length");
    for (std::size_t t = 0; t < trials; ++t) shocks.push_back(d.support[rng.below(d.support.size())]);
  }
  return shocks;
}

RateResult multiplicity_rate(const Network& net_template, const ShockSampler& sampler, std::size_t trials,
                             std::uint64_t seed, double tol) {
  if (trials == 0) throw Error(ErrorCode::InvalidParameter, "trials must be positive");
  prepare(net_template);
  // Draws are sequential so the stream is reproducible; trials then run in parallel.
  const auto shocks = draw_shocks(sampler, net_template.size(), trials, seed);
  long long multiple = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : multiple)
  for (long long t = 0; t < static_cast<long long>(trials); ++t) {
    const auto set = enumerate_equilibria_serial(net_template.with_shock(shocks[static_cast<std::size_t>(t)]), tol);
    if (set.multiple()) ++multiple;
  }
  RateResult r;
  r.multiple = static_cast<std::size_t>(multiple);
  r.trials = trials;
  r.seed = seed;
  r.fraction = static_cast<double>(r.multiple) / static_cast<double>(trials);
  return r;
}

}  // namespace netequil
