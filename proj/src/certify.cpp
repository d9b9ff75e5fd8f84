#include <algorithm>
#include <cmath>

#include "netequil/error.hpp"
#include "netequil/solver.hpp"

namespace netequil {
namespace {

bool all_lipschitz_at_most_one(const NetworkMetadata& meta) {
  if (!meta.beta) return false;
  return std::all_of(meta.beta->begin(), meta.beta->end(), [](double b) { return b <= 1.0; });
}

// f_j = clamp(t, 0, p̄_j) for every j.
bool en_shaped(const Network& net) {
  for (const auto& f : net.functions()) {
    const auto* c = f.clamped();
    if (!c || c->offset != 0.0 || c->gain != 1.0 || c->lower != 0.0 || !std::isfinite(c->upper)) return false;
  }
  return true;
}

// Rows sum to one, except zero rows of agents that owe nothing.
bool en_row_stochastic(const Network& net) {
  const Matrix& w = net.w();
  if (!w.is_nonnegative()) return false;
  const Vector rs = w.row_sums();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (std::fabs(rs[i] - 1.0) <= 1e-9) continue;
    if (rs[i] == 0.0 && net.function(i).clamped()->upper == 0.0) continue;
    return false;
  }
  return true;
}

// Every closed class with unit spectral radius must receive cash: some agent
// in it, or upstream of it, holds ε_i > 0.
bool closed_classes_funded(const Network& net) {
  const Matrix& w = net.w();
  const auto cond = scc_condensation(w);
  const std::size_t n = net.size();
  for (std::size_t b = 0; b < cond.block_count(); ++b) {
    if (cond.kind[b] != BlockKind::InSubgraph) continue;
    const VertexSet& s = cond.blocks[b];
    if (spectral_radius(restrict_to(w, s)) < 1.0 - kSpectralUnitTol) continue;
    bool funded = false;
    for (std::size_t i = 0; i < n && !funded; ++i) {
      if (!(net.shock()[i] > 0.0)) continue;
      if (cond.block_of[i] == b) {
        funded = true;
        break;
      }
      const VertexSet reach = reachable_from(w, {i});
      funded = std::any_of(s.begin(), s.end(),
                           [&](std::size_t v) { return std::binary_search(reach.begin(), reach.end(), v); });
    }
    if (!funded) return false;
  }
  return true;
}

}  // namespace

std::string certificate_name(const Certificate& c) {
  switch (c.index()) {
    case 0: return "Contraction";
    case 1: return "WeaklyChained";
    case 2: return "Acyclic";
    case 3: return "ENPositiveCash";
    default: return "NoneFound";
  }
}

Classification classify(const Network& net) {
  Classification out;
  const auto meta = network_metadata(net);
  if (meta.beta) {
    out.modulus = contraction_modulus(net.w(), *meta.beta);
    out.contracting = *out.modulus < 1.0 - kSpectralUnitTol;
  }
  if (meta.monotone && meta.bounded && all_lipschitz_at_most_one(meta) && net.w().is_nonnegative()) {
    out.noncontracting = std::fabs(spectral_radius(net.w()) - 1.0) <= kSpectralUnitTol;
  }
  out.neither = !out.contracting && !out.noncontracting;
  return out;
}

Certificate uniqueness_certificate(const Network& net) {
  const auto meta = network_metadata(net);
  if (meta.beta) {
    const double rho = contraction_modulus(net.w(), *meta.beta);
    if (rho < 1.0 - kSpectralUnitTol) return ContractionCert{rho};
  }
  if (all_lipschitz_at_most_one(meta) && net.w().is_nonnegative()) {
    for (auto side : {Orientation::Row, Orientation::Column}) {
      auto res = weakly_chained_check(net.w(), side);
      if (auto* w = std::get_if<ChainWitness>(&res)) return WeaklyChainedCert{std::move(*w)};
    }
  }
  if (meta.beta && is_acyclic(net.w())) return AcyclicCert{};
  if (en_shaped(net) && en_row_stochastic(net)) {
    const auto& eps = net.shock();
    const bool nonneg = std::all_of(eps.begin(), eps.end(), [](double e) { return e >= 0.0; });
    const bool some = std::any_of(eps.begin(), eps.end(), [](double e) { return e > 0.0; });
    if (nonneg && some && closed_classes_funded(net)) return ENPositiveCashCert{};
  }
  return NoCertificate{};
}

LinearSolvability linear_system_solvability(const Matrix& w, const Vector& eps, double tol) {
  const std::size_t n = w.size();
  if (eps.size() != n) throw Error(ErrorCode::DimensionMismatch, "shock length differs from W");
  const Matrix a = Matrix::identity(n) - w;
  try {
    return Solvable{linear_solve(a, eps)};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
  }
  if (!w.is_nonnegative() || !is_irreducible(w) || std::fabs(spectral_radius(w) - 1.0) > kSpectralUnitTol)
    throw Error(ErrorCode::UnhandledSingularity, "I - W is singular outside the irreducible unit-radius case");

  const Vector right = perron_vector(w, Side::Right).vector;
  const double orth = dot(eps, right);
  if (std::fabs(orth) > tol * std::max(1.0, norm_inf(eps))) return Unsolvable{orth};

  const auto gen = solve_general(a, eps, 1e-8);
  return Underdetermined{gen.particular, perron_vector(w, Side::Left).vector};
}

}  // namespace netequil
