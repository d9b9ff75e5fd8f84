#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "netequil/netmodel.hpp"

namespace netequil {

inline constexpr std::size_t kMaxEnumerate = 12;

enum class Tag { Lower, Upper, Interior };

struct EquilibriumFamily {
  std::vector<Tag> pattern;
  Vector base;
  std::vector<Vector> directions;
  /// x = base + t·direction, t in [t_lo, t_hi]; only for one direction.
  /// Canonical form: ‖direction‖_∞ = 1, first nonzero entry positive,
  /// base at the low end so t_lo = 0.
  std::optional<double> t_lo, t_hi;

  Vector at(double t) const;
};

struct EquilibriumSet {
  std::vector<Vector> points;  // sorted lexicographically
  std::vector<EquilibriumFamily> families;

  bool multiple() const { return !families.empty() || points.size() > 1; }
};

/// All equilibria of a unit-clamp network by Upper/Lower/Interior patterns.
/// The default runs patterns in parallel; the serial version is the
/// reference. Both return identical sorted output.
EquilibriumSet enumerate_equilibria(const Network& net, double tol = 1e-9);
EquilibriumSet enumerate_equilibria_serial(const Network& net, double tol = 1e-9);

/// Approximate fixed points in a box, n ≤ 3. Refined points that leave the
/// box are dropped. Results for Rogers-Veraart functions are heuristic.
std::vector<Vector> grid_search(const Network& net, const Vector& lower, const Vector& upper,
                                std::size_t resolution, double tol);

struct ContinuousUniform {
  Vector lower, upper;
};
struct DiscreteUniform {
  std::vector<Vector> support;
};
using ShockSampler = std::variant<ContinuousUniform, DiscreteUniform>;

/// The shocks a sampler produces for a seed, drawn in order.
std::vector<Vector> draw_shocks(const ShockSampler& sampler, std::size_t n, std::size_t trials,
                                std::uint64_t seed);

struct RateResult {
  double fraction = 0.0;
  std::size_t multiple = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

RateResult multiplicity_rate(const Network& net_template, const ShockSampler& sampler, std::size_t trials,
                             std::uint64_t seed, double tol = 1e-9);

}  // namespace netequil
