#pragma once

#include <string>

#include <json.hpp>

#include "autocd/graph.hpp"

namespace autocd {

nlohmann::json graph_to_json(const MixedGraph& g);
MixedGraph graph_from_json(const nlohmann::json& j);
void save_graph(const MixedGraph& g, const std::string& path);
MixedGraph load_graph(const std::string& path);

nlohmann::json knowledge_to_json(const Knowledge& kn);
Knowledge knowledge_from_json(const nlohmann::json& j);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

} // namespace autocd
