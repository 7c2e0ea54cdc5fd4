#include "autocd/crv.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace autocd {

std::vector<int> bootstrap_rows(int n_rows, std::optional<int> block_len, Rng& rng) {
    if (n_rows < 1) throw std::invalid_argument("bootstrap: empty dataset");
    std::vector<int> rows;
    rows.reserve(n_rows);
    if (!block_len) {
        for (int i = 0; i < n_rows; ++i)
            rows.push_back(static_cast<int>(rng.uniform_int(n_rows)));
        return rows;
    }
    const int len = *block_len;
    if (len < 1 || len > n_rows)
        throw std::invalid_argument("bootstrap: block length out of range");
    while (static_cast<int>(rows.size()) < n_rows) {
        int start = static_cast<int>(rng.uniform_int(n_rows - len + 1));
        for (int i = 0; i < len && static_cast<int>(rows.size()) < n_rows; ++i)
            rows.push_back(start + i);
    }
    return rows;
}

BootstrapResult bootstrap_graphs(const Dataset& d, const ClConfig& cfg, int n_boot,
                                 std::optional<int> block_len, uint64_t seed) {
    if (n_boot < 1) throw std::invalid_argument("bootstrap: n_boot must be positive");
    BootstrapResult out;
    for (int r = 0; r < n_boot; ++r) {
        Rng rng(Rng::substream(seed, "boot." + std::to_string(r)));
        Dataset rep = d.select_rows(bootstrap_rows(d.n_rows(), block_len, rng));
        try {
            out.graphs.push_back(run_discovery(rep, cfg));
        } catch (const std::exception&) {
            ++out.n_failed;
        }
    }
    return out;
}

bool mark_compatible(Mark a, Mark b) {
    return a == b || a == Mark::Circle || b == Mark::Circle;
}

std::vector<EdgeConfidence> edge_confidences(const MixedGraph& winner,
                                             const std::vector<MixedGraph>& population) {
    if (population.empty()) throw std::invalid_argument("edge_confidences: empty population");
    for (const MixedGraph& g : population)
        if (g.node_ids() != winner.node_ids())
            throw std::invalid_argument("edge_confidences: node sets differ");

    std::vector<EdgeConfidence> out;
    const int n = static_cast<int>(population.size());
    for (const Edge& e : winner.edges()) {
        EdgeConfidence c;
        c.edge = e;
        c.n_boot = n;
        int exact = 0, consistent = 0;
        for (const MixedGraph& g : population) {
            Mark at_a = g.mark(e.b, e.a);
            Mark at_b = g.mark(e.a, e.b);
            if (at_a == Mark::None) continue;
            if (at_a == e.mark_a && at_b == e.mark_b) ++exact;
            if (mark_compatible(at_a, e.mark_a) && mark_compatible(at_b, e.mark_b)) ++consistent;
        }
        c.exact_freq = static_cast<double>(exact) / n;
        c.consistency_freq = static_cast<double>(consistent) / n;
        out.push_back(c);
    }
    return out;
}

std::string to_string(QueryKind k) {
    switch (k) {
        case QueryKind::Edge: return "edge";
        case QueryKind::DirectedPath: return "directed_path";
        case QueryKind::PotentiallyDirectedPath: return "potentially_directed_path";
        case QueryKind::AnyPath: return "any_path";
    }
    throw std::invalid_argument("unknown query kind");
}

QueryKind query_kind_from_string(const std::string& s) {
    if (s == "edge") return QueryKind::Edge;
    if (s == "directed_path") return QueryKind::DirectedPath;
    if (s == "potentially_directed_path") return QueryKind::PotentiallyDirectedPath;
    if (s == "any_path") return QueryKind::AnyPath;
    throw std::invalid_argument("unknown query kind: " + s);
}

QueryAnswer answer_query(const MixedGraph& g, QueryKind kind, const std::string& a_id,
                         const std::string& b_id) {
    int a = g.index_of(a_id);
    int b = g.index_of(b_id);
    if (a == b) throw std::invalid_argument("query: endpoints must differ");

    QueryAnswer out;
    out.kind = kind;
    std::optional<std::vector<int>> path;
    switch (kind) {
        case QueryKind::Edge:
            if (edge_between(g, a, b)) path = std::vector<int>{a, b};
            break;
        case QueryKind::DirectedPath:
            path = directed_path(g, a, b);
            break;
        case QueryKind::PotentiallyDirectedPath:
            path = potentially_directed_path(g, a, b);
            break;
        case QueryKind::AnyPath:
            path = any_path(g, a, b);
            break;
    }
    if (path) {
        out.answer = true;
        out.witness = *path;
        out.subgraph = path_subgraph(g, *path);
    }
    return out;
}

std::string to_string(ExportFormat f) {
    switch (f) {
        case ExportFormat::Graphml: return "graphml";
        case ExportFormat::CytoscapeJson: return "cytoscape_json";
        case ExportFormat::DotLikeText: return "dot_like_text";
    }
    throw std::invalid_argument("unknown export format");
}

ExportFormat export_format_from_string(const std::string& s) {
    if (s == "graphml") return ExportFormat::Graphml;
    if (s == "cytoscape_json") return ExportFormat::CytoscapeJson;
    if (s == "dot_like_text") return ExportFormat::DotLikeText;
    throw std::invalid_argument("unknown export format: " + s);
}

std::string edge_marks(const Edge& e) {
    auto left = [](Mark m) {
        switch (m) {
            case Mark::Tail: return '-';
            case Mark::Arrow: return '<';
            case Mark::Circle: return 'o';
            default: throw std::invalid_argument("edge without a mark");
        }
    };
    auto right = [](Mark m) {
        switch (m) {
            case Mark::Tail: return '-';
            case Mark::Arrow: return '>';
            case Mark::Circle: return 'o';
            default: throw std::invalid_argument("edge without a mark");
        }
    };
    return std::string() + left(e.mark_a) + '-' + right(e.mark_b);
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string node_role(const MixedGraph& g, int v, int target) {
    if (target < 0) return "";
    if (v == target) return "target";
    for (int u : g.adjacent(target))
        if (u == v) return "neighbor";
    return "";
}

// Consistency of the confidence entry covering (a, b), if any.
const EdgeConfidence* confidence_for(const std::vector<EdgeConfidence>* confidences, int a,
                                     int b) {
    if (!confidences) return nullptr;
    for (const EdgeConfidence& c : *confidences)
        if ((c.edge.a == a && c.edge.b == b) || (c.edge.a == b && c.edge.b == a)) return &c;
    return nullptr;
}

std::string export_graphml(const MixedGraph& g, const std::vector<EdgeConfidence>* confidences,
                           int target) {
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    s += "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    s += "  <key id=\"variable\" for=\"node\" attr.name=\"variable\" attr.type=\"string\"/>\n";
    s += "  <key id=\"lag\" for=\"node\" attr.name=\"lag\" attr.type=\"int\"/>\n";
    s += "  <key id=\"role\" for=\"node\" attr.name=\"role\" attr.type=\"string\"/>\n";
    s += "  <key id=\"marks\" for=\"edge\" attr.name=\"marks\" attr.type=\"string\"/>\n";
    s += "  <key id=\"consistency\" for=\"edge\" attr.name=\"consistency\" attr.type=\"double\"/>\n";
    s += "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (int v = 0; v < g.n(); ++v) {
        const GraphNode& nd = g.node(v);
        s += "    <node id=\"" + xml_escape(nd.id) + "\">\n";
        s += "      <data key=\"label\">" + xml_escape(nd.label) + "</data>\n";
        s += "      <data key=\"variable\">" + xml_escape(nd.variable) + "</data>\n";
        s += "      <data key=\"lag\">" + std::to_string(nd.lag) + "</data>\n";
        s += "      <data key=\"role\">" + xml_escape(node_role(g, v, target)) + "</data>\n";
        s += "    </node>\n";
    }
    for (const Edge& e : g.edges()) {
        s += "    <edge source=\"" + xml_escape(g.node(e.a).id) + "\" target=\"" +
             xml_escape(g.node(e.b).id) + "\">\n";
        s += "      <data key=\"marks\">" + xml_escape(edge_marks(e)) + "</data>\n";
        if (const EdgeConfidence* c = confidence_for(confidences, e.a, e.b))
            s += "      <data key=\"consistency\">" + fmt_double(c->consistency_freq) +
                 "</data>\n";
        s += "    </edge>\n";
    }
    s += "  </graph>\n</graphml>\n";
    return s;
}

std::string export_cytoscape(const MixedGraph& g, const std::vector<EdgeConfidence>* confidences,
                             int target) {
    nlohmann::json nodes = nlohmann::json::array();
    for (int v = 0; v < g.n(); ++v) {
        const GraphNode& nd = g.node(v);
        nodes.push_back({{"data",
                          {{"id", nd.id},
                           {"label", nd.label},
                           {"variable", nd.variable},
                           {"lag", nd.lag},
                           {"role", node_role(g, v, target)}}}});
    }
    nlohmann::json edges = nlohmann::json::array();
    int i = 0;
    for (const Edge& e : g.edges()) {
        nlohmann::json data = {{"id", "e" + std::to_string(i++)},
                               {"source", g.node(e.a).id},
                               {"target", g.node(e.b).id},
                               {"marks", edge_marks(e)},
                               {"mark_source", to_string(e.mark_a)},
                               {"mark_target", to_string(e.mark_b)}};
        if (const EdgeConfidence* c = confidence_for(confidences, e.a, e.b))
            data["consistency"] = c->consistency_freq;
        edges.push_back({{"data", data}});
    }
    nlohmann::json doc = {{"data", {{"kind", to_string(g.kind())}}},
                          {"elements", {{"nodes", nodes}, {"edges", edges}}}};
    return doc.dump(2) + "\n";
}

std::string export_dot_like(const MixedGraph& g, const std::vector<EdgeConfidence>* confidences,
                            int target) {
    std::string s = "graph causal {\n";
    for (int v = 0; v < g.n(); ++v) {
        const GraphNode& nd = g.node(v);
        s += "  \"" + nd.id + "\" [lag=" + std::to_string(nd.lag);
        std::string role = node_role(g, v, target);
        if (!role.empty()) s += ", role=\"" + role + "\"";
        s += "];\n";
    }
    for (const Edge& e : g.edges()) {
        s += "  \"" + g.node(e.a).id + "\" " + edge_marks(e) + " \"" + g.node(e.b).id + "\"";
        if (const EdgeConfidence* c = confidence_for(confidences, e.a, e.b))
            s += " [consistency=" + fmt_double(c->consistency_freq) + "]";
        s += ";\n";
    }
    s += "}\n";
    return s;
}

} // namespace

std::string export_graph(const MixedGraph& g, const std::vector<EdgeConfidence>* confidences,
                         ExportFormat format, const std::string& target_id) {
    int target = target_id.empty() ? -1 : g.index_of(target_id);
    switch (format) {
        case ExportFormat::Graphml: return export_graphml(g, confidences, target);
        case ExportFormat::CytoscapeJson: return export_cytoscape(g, confidences, target);
        case ExportFormat::DotLikeText: return export_dot_like(g, confidences, target);
    }
    throw std::invalid_argument("unknown export format");
}

} // namespace autocd
