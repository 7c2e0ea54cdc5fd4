#include "autocd/graph_io.hpp"

#include <fstream>
#include <stdexcept>

namespace autocd {

nlohmann::json graph_to_json(const MixedGraph& g) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const GraphNode& nd : g.nodes()) {
        nlohmann::json jn{{"id", nd.id}, {"label", nd.label}};
        if (!nd.variable.empty()) jn["variable"] = nd.variable;
        if (nd.lag >= 0) jn["lag"] = nd.lag;
        nodes.push_back(std::move(jn));
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges())
        edges.push_back({{"a", g.node(e.a).id},
                         {"b", g.node(e.b).id},
                         {"mark_a", to_string(e.mark_a)},
                         {"mark_b", to_string(e.mark_b)}});
    return {{"kind", to_string(g.kind())}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

MixedGraph graph_from_json(const nlohmann::json& j) {
    std::vector<GraphNode> nodes;
    for (const auto& jn : j.at("nodes")) {
        GraphNode nd;
        nd.id = jn.at("id").get<std::string>();
        nd.label = jn.value("label", nd.id);
        nd.variable = jn.value("variable", std::string{});
        nd.lag = jn.value("lag", -1);
        nodes.push_back(std::move(nd));
    }
    MixedGraph g(kind_from_string(j.at("kind").get<std::string>()), std::move(nodes));
    for (const auto& je : j.at("edges")) {
        const int a = g.index_of(je.at("a").get<std::string>());
        const int b = g.index_of(je.at("b").get<std::string>());
        g.add_edge(a, b, mark_from_string(je.at("mark_a").get<std::string>()),
                   mark_from_string(je.at("mark_b").get<std::string>()));
    }
    return g;
}

void save_graph(const MixedGraph& g, const std::string& path) {
    save_json(graph_to_json(g), path);
}

MixedGraph load_graph(const std::string& path) { return graph_from_json(load_json(path)); }

nlohmann::json knowledge_to_json(const Knowledge& kn) {
    nlohmann::json j;
    j["tiers"] = kn.tiers;
    nlohmann::json forbidden = nlohmann::json::array();
    for (const auto& [a, b] : kn.forbidden) forbidden.push_back({a, b});
    nlohmann::json required = nlohmann::json::array();
    for (const auto& [a, b] : kn.required) required.push_back({a, b});
    j["forbidden"] = std::move(forbidden);
    j["required"] = std::move(required);
    return j;
}

Knowledge knowledge_from_json(const nlohmann::json& j) {
    Knowledge kn;
    if (j.contains("tiers")) kn.tiers = j.at("tiers").get<std::vector<std::vector<std::string>>>();
    auto read_pairs = [&j](const char* key, std::vector<std::pair<std::string, std::string>>& out) {
        if (!j.contains(key)) return;
        for (const auto& jp : j.at(key)) {
            if (!jp.is_array() || jp.size() != 2)
                throw std::invalid_argument(std::string("knowledge ") + key +
                                            " entries must be [from, to] pairs");
            out.emplace_back(jp[0].get<std::string>(), jp[1].get<std::string>());
        }
    };
    read_pairs("forbidden", kn.forbidden);
    read_pairs("required", kn.required);
    return kn;
}

void save_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return nlohmann::json::parse(in);
}

} // namespace autocd
