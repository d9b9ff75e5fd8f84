#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "netequil/netmodel.hpp"

namespace netequil {

/// A parsed NetworkDocument (schema_version "1"): either raw W, shock and
/// functions, or a model block built through build_network.
struct Document {
  Network network;
  std::optional<Lattice> lattice;
  std::optional<ModelSpec> model;
};

Document parse_document(const nlohmann::json& j);
Document parse_document_text(const std::string& text);
Document load_document(const std::string& path);

nlohmann::ordered_json to_json(const InteractionFunction& f);
nlohmann::ordered_json network_document(const Network& net, const std::optional<Lattice>& lattice = std::nullopt);

}  // namespace netequil
