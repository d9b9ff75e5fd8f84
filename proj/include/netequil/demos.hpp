#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netequil/netmodel.hpp"

namespace netequil::demos {

/// Two agents feeding each other one for one, clamps [−2, 2].
Network example_3_1(Vector shock = {1.0, -1.0});

Matrix w_a();
Matrix w_b();
Vector shock_a();
Vector shock_b();
/// f^a clamps to [0, 2], f^b to [0.1, 2].
std::vector<InteractionFunction> f_a();
std::vector<InteractionFunction> f_b();

/// Variant 'a'..'e' of the four-agent comparative-statics table.
Network comparative(char variant);
Vector comparative_expected(char variant);

Network seven_node();
Vector seven_node_expected();  // as printed

/// Clamp [0, 5], W = [[0,2],[3,0]], ε = (−6, 2): two equilibria, no global stability.
Network spectral_tightness();

std::vector<std::string> names();

/// The network behind a demo name; nullopt when unknown.
std::optional<Network> by_name(const std::string& name);

}  // namespace netequil::demos
