#include <algorithm>
#include <cmath>
#include <string>

#include "netequil/error.hpp"
#include "netequil/solver.hpp"

namespace netequil {
namespace {

void require_length(const Network& net, const Vector& x, const char* what) {
  if (x.size() != net.size())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has length " + std::to_string(x.size()) +
                                                  ", expected " + std::to_string(net.size()));
}

// M^k by binary powering.
Matrix power(const Matrix& m, std::size_t k) {
  Matrix result = Matrix::identity(m.size());
  Matrix base = m;
  while (k > 0) {
    if (k & 1U) result = multiply(result, base);
    k >>= 1U;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

// Intrinsic lattice, or [0, cap] for Rogers-Veraart style networks fed by
// nonnegative inputs.
std::optional<Lattice> default_lattice(const Network& net) {
  if (auto lat = network_metadata(net).lattice) return lat;
  const auto& eps = net.shock();
  if (!net.w().is_nonnegative() || std::any_of(eps.begin(), eps.end(), [](double e) { return e < 0.0; }))
    return std::nullopt;
  Lattice lat;
  for (const auto& f : net.functions()) {
    auto hi = f.upper_bound();
    if (!hi) return std::nullopt;
    double lo = 0.0;
    if (f.clamped()) {
      auto l = f.lower_bound();
      if (!l) return std::nullopt;
      lo = *l;
    }
    lat.lower.push_back(lo);
    lat.upper.push_back(*hi);
  }
  return lat;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Banach: return "Banach";
    case Method::TarskiAbove: return "TarskiAbove";
    case Method::TarskiBelow: return "TarskiBelow";
    case Method::Algorithm1: return "Algorithm1";
  }
  return "?";
}

double verify_equilibrium(const Network& net, const Vector& x) {
  require_length(net, x, "x");
  return net.residual(x);
}

SolveReport solve_banach(const Network& net, const Vector& x0, SolveOptions opt, const BanachObserver& observer) {
  require_length(net, x0, "x0");
  const auto cls = classify(net);
  if (!cls.contracting) {
    std::string why = cls.modulus ? "r(|W| diag(beta)) = " + std::to_string(*cls.modulus) + " is not below one"
                                  : "some interaction function is not Lipschitz";
    throw Error(ErrorCode::NotContracting, why);
  }
  const Vector beta = *network_metadata(net).beta;
  const Matrix m = net.w().abs().scale_columns(beta);

  Vector x = x0;
  Vector tx = net.apply(x);
  const double d0 = max_abs_diff(tx, x);
  double step = d0;
  Matrix mk = Matrix::identity(net.size());
  std::size_t k = 0;
  for (;;) {
    if (observer) {
      observer(k, step, mk.norm_row_action() * d0);
      mk = multiply(mk, m);
    }
    if (step <= opt.tol) break;
    if (k >= opt.max_iter)
      throw Error(ErrorCode::MaxIterations, "Banach iteration hit " + std::to_string(opt.max_iter) + " steps");
    x = std::move(tx);
    tx = net.apply(x);
    step = max_abs_diff(tx, x);
    ++k;
  }

  SolveReport rep;
  rep.method = Method::Banach;
  rep.iterations = k;
  rep.residual = step;
  rep.error_bound = power(m, k).norm_row_action() * d0;
  rep.x = std::move(x);
  rep.certificate = ContractionCert{*cls.modulus};
  return rep;
}

SolveReport solve_tarski(const Network& net, Direction direction, SolveOptions opt,
                         const std::optional<Lattice>& lattice, const TarskiObserver& observer) {
  bool discontinuous = false;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& f = net.function(i);
    if (!f.is_monotone()) throw Error(ErrorCode::NotMonotone, "interaction function is not monotone", i);
    if (f.rogers_veraart()) discontinuous = true;
  }
  if (!net.w().is_nonnegative()) throw Error(ErrorCode::NotMonotone, "T is monotone only for W >= 0");
  if (discontinuous && direction == Direction::Below)
    throw Error(ErrorCode::Unsupported, "discontinuous interaction functions support iteration from above only");

  const auto lat = lattice ? lattice : default_lattice(net);
  if (!lat) throw Error(ErrorCode::NoLattice, "no lattice bounds available; supply lower and upper vectors");
  require_length(net, lat->lower, "lattice lower");
  require_length(net, lat->upper, "lattice upper");

  Vector x = direction == Direction::Above ? lat->upper : lat->lower;
  if (observer) observer(0, x);
  std::size_t k = 0;
  double residual = 0.0;
  for (;;) {
    if (k >= opt.max_iter)
      throw Error(ErrorCode::MaxIterations, "Tarski iteration hit " + std::to_string(opt.max_iter) + " steps");
    Vector next = net.apply(x);
    const double diff = max_abs_diff(next, x);
    x = std::move(next);
    ++k;
    if (observer) observer(k, x);
    if (diff <= opt.tol) {
      residual = net.residual(x);
      if (residual <= opt.tol) break;
    }
  }

  SolveReport rep;
  rep.method = direction == Direction::Above ? Method::TarskiAbove : Method::TarskiBelow;
  rep.iterations = k;
  rep.residual = residual;
  rep.x = std::move(x);
  rep.certificate = uniqueness_certificate(net);
  if (discontinuous) rep.notes.push_back("greatest fixed point candidate");
  return rep;
}

}  // namespace netequil
