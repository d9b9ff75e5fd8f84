#include <algorithm>
#include <cmath>
#include <string>

#include "netequil/error.hpp"
#include "netequil/netmodel.hpp"

namespace netequil {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void validate(const ClampedAffine& f) {
  if (!std::isfinite(f.offset)) throw Error(ErrorCode::InvalidParameter, "clamped_affine offset must be finite");
  if (!std::isfinite(f.gain) || f.gain < 0.0)
    throw Error(ErrorCode::InvalidParameter, "clamped_affine gain must be finite and nonnegative");
  if (std::isnan(f.lower) || std::isnan(f.upper) || f.lower == kInf || f.upper == -kInf)
    throw Error(ErrorCode::InvalidParameter, "clamped_affine bounds are malformed");
  if (f.lower > f.upper) throw Error(ErrorCode::InvalidParameter, "clamped_affine needs lower <= upper");
}

void validate(const RogersVeraart& f) {
  if (!(f.beta > 0.0 && f.beta < 1.0)) throw Error(ErrorCode::InvalidParameter, "rogers_veraart beta must lie in (0,1)");
  if (!std::isfinite(f.threshold)) throw Error(ErrorCode::InvalidParameter, "rogers_veraart threshold must be finite");
  if (!(std::isfinite(f.cap) && f.cap > 0.0)) throw Error(ErrorCode::InvalidParameter, "rogers_veraart cap must be positive");
}

}  // namespace

InteractionFunction::InteractionFunction(ClampedAffine f) : f_(f) { validate(f); }
InteractionFunction::InteractionFunction(RogersVeraart f) : f_(f) { validate(f); }

InteractionFunction InteractionFunction::bounded_identity(double lower, double upper) {
  return ClampedAffine{0.0, 1.0, lower, upper};
}

double InteractionFunction::operator()(double t) const {
  return std::visit(overloaded{
                        [t](const ClampedAffine& f) { return std::min(std::max(f.offset + f.gain * t, f.lower), f.upper); },
                        [t](const RogersVeraart& f) { return t < f.threshold ? f.beta * t : f.cap; },
                    },
                    f_);
}

std::optional<double> InteractionFunction::lipschitz() const {
  if (const auto* f = clamped()) return f->lower == f->upper ? 0.0 : f->gain;
  return std::nullopt;
}

bool InteractionFunction::is_monotone() const {
  if (clamped()) return true;
  const auto& f = *rogers_veraart();
  return f.beta * f.threshold <= f.cap;
}

bool InteractionFunction::is_bounded() const {
  if (const auto* f = clamped()) return std::isfinite(f->lower) && std::isfinite(f->upper);
  return false;
}

std::optional<double> InteractionFunction::lower_bound() const {
  if (const auto* f = clamped(); f && std::isfinite(f->lower)) return f->lower;
  return std::nullopt;
}

std::optional<double> InteractionFunction::upper_bound() const {
  if (const auto* f = clamped()) {
    if (std::isfinite(f->upper)) return f->upper;
    return std::nullopt;
  }
  const auto& f = *rogers_veraart();
  return std::max(f.beta * f.threshold, f.cap);
}

double InteractionFunction::derivative(double t) const {
  if (const auto* f = clamped()) {
    if (f->lower == f->upper) return 0.0;
    const double v = f->offset + f->gain * t;
    return (v >= f->lower && v <= f->upper) ? f->gain : 0.0;
  }
  const auto& f = *rogers_veraart();
  return t < f.threshold ? f.beta : 0.0;
}

bool InteractionFunction::at_kink(double t) const {
  if (const auto* f = clamped()) {
    const double v = f->offset + f->gain * t;
    return v == f->lower || v == f->upper;
  }
  return t == rogers_veraart()->threshold;
}

bool InteractionFunction::is_unit_clamp() const {
  const auto* f = clamped();
  return f && f->offset == 0.0 && f->gain == 1.0 && std::isfinite(f->lower) && std::isfinite(f->upper) &&
         f->lower < f->upper;
}

// ---------------------------------------------------------------------------

Network::Network(Matrix w, std::vector<InteractionFunction> functions, Vector shock)
    : w_(std::move(w)), f_(std::move(functions)), shock_(std::move(shock)) {
  const std::size_t n = w_.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "network needs at least one agent");
  if (f_.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n) + " interaction functions, got " +
                                                  std::to_string(f_.size()));
  if (shock_.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n) + " shocks, got " +
                                                  std::to_string(shock_.size()));
  if (!w_.all_finite()) throw Error(ErrorCode::InvalidParameter, "sensitivity matrix has non-finite entries");
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(shock_[i])) throw Error(ErrorCode::InvalidParameter, "shock must be finite", i);
}

Vector Network::inputs(std::span<const double> x) const {
  Vector t = vec_mat(x, w_);
  for (std::size_t j = 0; j < t.size(); ++j) t[j] += shock_[j];
  return t;
}

Vector Network::apply(std::span<const double> x) const {
  Vector t = inputs(x);
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = f_[j](t[j]);
  return t;
}

double Network::residual(std::span<const double> x) const { return max_abs_diff(x, apply(x)); }

Network Network::with_shock(Vector shock) const { return Network(w_, f_, std::move(shock)); }

NetworkMetadata network_metadata(const Network& net) {
  NetworkMetadata meta;
  const std::size_t n = net.size();
  Vector beta(n);
  bool lipschitz = true;
  meta.bounded = true;
  meta.monotone = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = net.function(i);
    if (auto b = f.lipschitz())
      beta[i] = *b;
    else
      lipschitz = false;
    meta.bounded = meta.bounded && f.is_bounded();
    meta.monotone = meta.monotone && f.is_monotone();
  }
  if (lipschitz) meta.beta = std::move(beta);
  if (meta.bounded) {
    Lattice lat;
    for (const auto& f : net.functions()) {
      lat.lower.push_back(*f.lower_bound());
      lat.upper.push_back(*f.upper_bound());
    }
    meta.lattice = std::move(lat);
  }
  return meta;
}

}  // namespace netequil
