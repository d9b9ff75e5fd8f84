#include <algorithm>
#include <cmath>
#include <string>

#include "netequil/error.hpp"
#include "netequil/keyplayer.hpp"

namespace netequil {

Vector katz_centrality(const Matrix& w, double alpha, KatzSide side) {
  if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidParameter, "alpha must be finite");
  const double r = spectral_radius(w.abs());
  if (std::fabs(alpha) * r >= 1.0 - kSpectralUnitTol)
    throw Error(ErrorCode::NotConvergent, "|alpha| r(|W|) = " + std::to_string(std::fabs(alpha) * r) + " >= 1");
  const Matrix m = side == KatzSide::Hub ? w : w.transpose();
  const std::size_t n = w.size();
  return linear_solve(Matrix::identity(n) - m.scaled(alpha), Vector(n, 1.0));
}

bool stability_certificate(const Network& net) {
  const auto meta = network_metadata(net);
  if (!meta.beta || !meta.monotone) return false;
  return contraction_modulus(net.w(), *meta.beta) < 1.0 - kSpectralUnitTol;
}

ImpactReport impact_measure(const Network& net, const Vector& x_star) {
  const std::size_t n = net.size();
  if (x_star.size() != n) throw Error(ErrorCode::DimensionMismatch, "x* has the wrong length");
  const auto meta = network_metadata(net);
  if (!meta.beta) throw Error(ErrorCode::NotStable, "non-differentiable interaction functions are not supported");
  if (contraction_modulus(net.w(), *meta.beta) >= 1.0 - kSpectralUnitTol)
    throw Error(ErrorCode::NotStable, "r(|W| diag(beta)) >= 1, stability is not certified");

  ImpactReport rep;
  rep.stability_certified = meta.monotone;
  const Vector in = net.inputs(x_star);
  Vector slope(n);
  for (std::size_t j = 0; j < n; ++j) {
    slope[j] = net.function(j).derivative(in[j]);
    if (net.function(j).at_kink(in[j])) rep.kinks.push_back(j);
  }
  if (!rep.kinks.empty()) rep.notes.push_back("f' at kinks uses the slope of the unclamped piece");

  // s(I − M) = 1 with M = diag(f') W^T
  const Matrix m = net.w().transpose().scale_rows(slope);
  const Vector s = linear_solve(Matrix::identity(n) - m, Vector(n, 1.0));
  rep.sigma = hadamard(s, x_star);
  rep.key_player = static_cast<std::size_t>(std::max_element(rep.sigma.begin(), rep.sigma.end()) - rep.sigma.begin());
  return rep;
}

}  // namespace netequil
