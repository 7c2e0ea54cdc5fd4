#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "autocd/knowledge.hpp"

namespace autocd {

enum class Mark : uint8_t { None = 0, Tail = 1, Arrow = 2, Circle = 3 };

enum class GraphKind { Dag, Cpdag, Mag, Pag };

std::string to_string(Mark m);
Mark mark_from_string(const std::string& s);
std::string to_string(GraphKind k);
GraphKind kind_from_string(const std::string& s);

struct GraphNode {
    std::string id;
    std::string label;
    std::string variable;
    int lag = -1; // -1 when the node is not a (variable, lag) pair
};

GraphNode make_node(const std::string& id);
// Time-series node; id is "VAR:LAG".
GraphNode make_lag_node(const std::string& variable, int lag);

struct Edge {
    int a = -1;
    int b = -1;
    Mark mark_a = Mark::None; // mark at a's end
    Mark mark_b = Mark::None;
};

// Mixed-mark graph over a fixed node list. mark(a, b) returns the mark at
// b's end of the edge between a and b, so a -> b is mark(b, a) == Tail,
// mark(a, b) == Arrow.
class MixedGraph {
public:
    MixedGraph() = default;
    MixedGraph(GraphKind kind, std::vector<GraphNode> nodes);

    int n() const { return static_cast<int>(nodes_.size()); }
    GraphKind kind() const { return kind_; }
    void set_kind(GraphKind k) { kind_ = k; }

    const GraphNode& node(int i) const;
    const std::vector<GraphNode>& nodes() const { return nodes_; }
    std::vector<std::string> node_ids() const;
    int index_of(const std::string& id) const; // throws on unknown id
    int find_index(const std::string& id) const; // -1 on unknown id

    bool has_edge(int a, int b) const;
    Mark mark(int a, int b) const; // Mark::None when no edge
    void add_edge(int a, int b, Mark at_a, Mark at_b);
    void set_mark(int a, int b, Mark at_b); // edge must exist
    void remove_edge(int a, int b);

    int edge_count() const;
    std::vector<Edge> edges() const; // normalized a < b
    Edge edge(int a, int b) const;
    std::vector<int> adjacent(int a) const;
    std::vector<int> parents(int a) const;  // p with p -> a
    std::vector<int> children(int a) const; // c with a -> c

    // Throws std::invalid_argument when the kind's invariants fail:
    // DAG: tail/arrow edges, acyclic. CPDAG: no circle marks.
    // MAG: no circles, no directed cycles, no almost-directed cycles.
    void validate() const;

private:
    void check(int a) const;
    GraphKind kind_ = GraphKind::Dag;
    std::vector<GraphNode> nodes_;
    std::vector<Mark> marks_; // n*n, marks_[a*n+b] = mark at b on edge a-b
    std::unordered_map<std::string, int> index_;
};

// anc[a][b] = a is an ancestor of b via directed (tail -> arrow) edges;
// reflexive.
std::vector<std::vector<char>> ancestor_matrix(const MixedGraph& g);

// Kahn order over directed edges. Throws when the directed part is cyclic.
std::vector<int> topological_order(const MixedGraph& g);

// m-separation (d-separation on DAGs). Requires kind DAG or MAG and
// x != y, x,y not in z.
bool is_m_separated(const MixedGraph& g, int x, int y, const std::vector<int>& z);

// Adjacent nodes plus nodes reachable through a definite-collider path.
// On a DAG this is parents, children and spouses. Sorted by index.
std::vector<int> markov_boundary(const MixedGraph& g, int x);

// Marginal MAG of a DAG over the observed nodes: adjacency iff an inducing
// path relative to the latent set exists; mark at an endpoint is Tail iff
// that endpoint is an ancestor of the other in the DAG.
MixedGraph latent_projection(const MixedGraph& g, const std::vector<int>& observed);

// CPDAG of a DAG: skeleton plus v-structures, closed under the Meek rules.
MixedGraph cpdag_of(const MixedGraph& g);

// Meek orientation closure on a tail/arrow graph. Only turns fully
// undirected edges into directed ones; orientations the knowledge forbids
// are skipped.
void apply_meek_rules(MixedGraph& g, const KnowledgeIndex* kn = nullptr);

enum class PathKind { Directed, PotentiallyDirected, Any };

// Shortest admissible simple path from a to b, ties broken by smallest node
// index at each step. Directed: every edge tail at the near end, arrow at
// the far end. PotentiallyDirected: near mark in {tail, circle}, far mark in
// {arrow, circle}.
std::optional<std::vector<int>> find_path(const MixedGraph& g, int a, int b, PathKind kind);
std::optional<std::vector<int>> directed_path(const MixedGraph& g, int a, int b);
std::optional<std::vector<int>> potentially_directed_path(const MixedGraph& g, int a, int b);
std::optional<std::vector<int>> any_path(const MixedGraph& g, int a, int b);

std::optional<Edge> edge_between(const MixedGraph& g, int a, int b);

// Graph containing only the path's nodes (in path order) and its edges.
MixedGraph path_subgraph(const MixedGraph& g, const std::vector<int>& path);

} // namespace autocd
