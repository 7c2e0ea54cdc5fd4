#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autocd/dataset.hpp"
#include "autocd/discovery.hpp"
#include "autocd/graph.hpp"
#include "autocd/rng.hpp"

namespace autocd {

struct BootstrapResult {
    std::vector<MixedGraph> graphs; // successful replicates only
    int n_failed = 0;
};

// Resampled row indices: i.i.d. with replacement, or moving blocks of
// block_len contiguous rows for serially dependent data. block_len equal to
// n_rows reproduces the original row order.
std::vector<int> bootstrap_rows(int n_rows, std::optional<int> block_len, Rng& rng);

// Learns one graph per resampled replicate. Replicates where discovery
// fails are dropped and counted.
BootstrapResult bootstrap_graphs(const Dataset& d, const ClConfig& cfg, int n_boot,
                                 std::optional<int> block_len = std::nullopt,
                                 uint64_t seed = 0);

// Marks agree when equal or when either is a circle (the circle claims
// nothing, so it never contradicts).
bool mark_compatible(Mark a, Mark b);

struct EdgeConfidence {
    Edge edge; // from the winning graph
    double exact_freq = 0.0;
    double consistency_freq = 0.0;
    int n_boot = 0;
};

// Per winner edge: the fraction of population graphs with the identical
// edge, and the fraction with an edge on the same pair whose marks are
// endpoint-wise compatible. Confidences are conditional on the winning
// configuration, not probabilities that the edge is real.
std::vector<EdgeConfidence> edge_confidences(const MixedGraph& winner,
                                             const std::vector<MixedGraph>& population);

enum class QueryKind { Edge, DirectedPath, PotentiallyDirectedPath, AnyPath };

std::string to_string(QueryKind k);
QueryKind query_kind_from_string(const std::string& s);

struct QueryAnswer {
    QueryKind kind = QueryKind::Edge;
    bool answer = false;
    std::vector<int> witness; // node path, present iff answer
    MixedGraph subgraph;      // restriction of the graph to the witness
};

QueryAnswer answer_query(const MixedGraph& g, QueryKind kind, const std::string& a_id,
                         const std::string& b_id);

enum class ExportFormat { Graphml, CytoscapeJson, DotLikeText };

std::string to_string(ExportFormat f);
ExportFormat export_format_from_string(const std::string& s);

// Compact endpoint notation: "-->", "<->", "o->", "o-o", "---".
std::string edge_marks(const Edge& e);

// Serializes the graph for external viewers. Nodes carry label, variable,
// lag and a highlight role (target / neighbor of target_id when given);
// edges carry their mark string and, when confidences are supplied, the
// consistency frequency as a weight.
std::string export_graph(const MixedGraph& g, const std::vector<EdgeConfidence>* confidences,
                         ExportFormat format, const std::string& target_id = "");

} // namespace autocd
