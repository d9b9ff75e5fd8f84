#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "netequil/matrix.hpp"

namespace netequil {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// f(t) = min(max(offset + gain·t, lower), upper). Infinite clamps are
/// allowed; lower == upper gives a constant map.
struct ClampedAffine {
  double offset = 0.0;
  double gain = 1.0;
  double lower = -kInf;
  double upper = kInf;

  friend bool operator==(const ClampedAffine&, const ClampedAffine&) = default;
};

/// f(t) = beta·t for t < threshold, cap for t ≥ threshold.
struct RogersVeraart {
  double beta = 0.5;
  double threshold = 0.0;
  double cap = 1.0;

  friend bool operator==(const RogersVeraart&, const RogersVeraart&) = default;
};

class InteractionFunction {
 public:
  using Variant = std::variant<ClampedAffine, RogersVeraart>;

  InteractionFunction(ClampedAffine f);
  InteractionFunction(RogersVeraart f);

  static InteractionFunction identity() { return ClampedAffine{}; }
  /// min(max(t, lower), upper)
  static InteractionFunction bounded_identity(double lower, double upper);
  static InteractionFunction linear(double gain) { return ClampedAffine{0.0, gain, -kInf, kInf}; }

  double operator()(double t) const;

  /// Lipschitz constant; absent for the discontinuous Rogers-Veraart map.
  std::optional<double> lipschitz() const;
  bool is_monotone() const;
  bool is_bounded() const;
  /// Bounds of the range. Rogers-Veraart has an upper bound only.
  std::optional<double> lower_bound() const;
  std::optional<double> upper_bound() const;
  /// Slope at t. At a clamp breakpoint this is the slope of the unclamped
  /// piece (interior one-sided value).
  double derivative(double t) const;
  /// True when t sits exactly on a breakpoint.
  bool at_kink(double t) const;

  bool is_unit_clamp() const;  // gain 1, offset 0, both clamps finite

  const Variant& variant() const noexcept { return f_; }
  const ClampedAffine* clamped() const { return std::get_if<ClampedAffine>(&f_); }
  const RogersVeraart* rogers_veraart() const { return std::get_if<RogersVeraart>(&f_); }

  friend bool operator==(const InteractionFunction&, const InteractionFunction&) = default;

 private:
  Variant f_;
};

struct Lattice {
  Vector lower;
  Vector upper;
};

/// A network (f, W, ε): equilibria solve x = f(xW + ε).
class Network {
 public:
  Network(Matrix w, std::vector<InteractionFunction> functions, Vector shock);

  std::size_t size() const noexcept { return w_.size(); }
  const Matrix& w() const noexcept { return w_; }
  const std::vector<InteractionFunction>& functions() const noexcept { return f_; }
  const InteractionFunction& function(std::size_t i) const { return f_[i]; }
  const Vector& shock() const noexcept { return shock_; }

  /// xW + ε
  Vector inputs(std::span<const double> x) const;
  /// T x = f(xW + ε)
  Vector apply(std::span<const double> x) const;
  /// max_j |x_j − f_j((xW)_j + ε_j)|
  double residual(std::span<const double> x) const;

  Network with_shock(Vector shock) const;

 private:
  Matrix w_;
  std::vector<InteractionFunction> f_;
  Vector shock_;
};

// ---------------------------------------------------------------------------
// Model families

struct InputOutput {
  Matrix w;
  Vector final_demand;
};

struct Production {
  double alpha = 0.5;
  Matrix shares;                          // column sums one
  Vector log_productivity;                // log z_j
  std::optional<Vector> epsilon;          // overrides the μ-based shock
};

struct SimpleGame {
  double phi = 0.1;
  Matrix g;
  Vector alpha;
};

struct GlobalLocalGame {
  double eta = 1.0;
  double gamma = 0.0;
  double phi = 0.1;
  Matrix g;
  Vector alpha;
};

struct InterbankGame {
  double theta = 1.0;
  Vector c0;
  Vector phi;
  Matrix g;
};

struct CrossHoldings {
  Matrix w;
  Vector prices;                      // p_h, h = 1..m
  std::vector<Vector> holdings;       // m rows of n shares b_hj
};

struct EisenbergNoe {
  Matrix liabilities;  // nominal δ_ij ≥ 0
  Vector cash;         // ε ≥ 0
};

struct GeneralizedEN {
  Matrix w;
  Vector pbar;
  Vector epsilon;
};

struct BankruptcyCost {
  Matrix w;
  Vector alpha;
  Vector pbar;
  Vector epsilon;
};

struct RogersVeraartNet {
  Matrix w;
  double alpha = 0.5;
  double beta = 0.5;
  Vector pbar;
  Vector epsilon;
};

struct MaturityEN {
  Matrix w;
  Vector pbar;
  Vector net_remainder;  // B_j
  Vector epsilon;
};

using ModelSpec = std::variant<InputOutput, Production, SimpleGame, GlobalLocalGame, InterbankGame,
                               CrossHoldings, EisenbergNoe, GeneralizedEN, BankruptcyCost,
                               RogersVeraartNet, MaturityEN>;

std::string family_name(const ModelSpec& spec);

Network build_network(const ModelSpec& spec);

/// Linear closed form for the linear families. Throws Unsupported for the
/// clamped or discontinuous families and NotInvertible when the family's
/// spectral condition fails.
Vector closed_form_equilibrium(const ModelSpec& spec);

/// The μ_j constants of the log-linear production economy.
Vector production_mu(double alpha, const Matrix& shares);

struct NetworkMetadata {
  std::optional<Vector> beta;
  bool bounded = false;
  bool monotone = false;
  std::optional<Lattice> lattice;
};

NetworkMetadata network_metadata(const Network& net);

}  // namespace netequil
