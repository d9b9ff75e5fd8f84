#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "netequil/matgraph.hpp"
#include "netequil/netmodel.hpp"

namespace netequil {

enum class KatzSide { Hub, Authority };

/// Hub: 1(I − αW)^{-1}. Authority: 1(I − αW^T)^{-1}.
Vector katz_centrality(const Matrix& w, double alpha, KatzSide side);

struct ImpactReport {
  Vector sigma;
  std::size_t key_player = 0;
  bool stability_certified = false;
  VertexSet kinks;  // agents whose input sits on a breakpoint of f
  std::vector<std::string> notes;
};

/// σ = 1[I − diag(f'(x*W + ε)) W^T]^{-1} diag(x*).
ImpactReport impact_measure(const Network& net, const Vector& x_star);

/// r(|W| diag β) < 1; the sufficient condition only.
bool stability_certificate(const Network& net);

}  // namespace netequil
