#include "autocd/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>
#include <utility>

namespace autocd {

std::string to_string(Mark m) {
    switch (m) {
        case Mark::Tail: return "tail";
        case Mark::Arrow: return "arrow";
        case Mark::Circle: return "circle";
        default: return "none";
    }
}

Mark mark_from_string(const std::string& s) {
    if (s == "tail") return Mark::Tail;
    if (s == "arrow") return Mark::Arrow;
    if (s == "circle") return Mark::Circle;
    throw std::invalid_argument("unknown endpoint mark: " + s);
}

std::string to_string(GraphKind k) {
    switch (k) {
        case GraphKind::Dag: return "dag";
        case GraphKind::Cpdag: return "cpdag";
        case GraphKind::Mag: return "mag";
        default: return "pag";
    }
}

GraphKind kind_from_string(const std::string& s) {
    if (s == "dag") return GraphKind::Dag;
    if (s == "cpdag") return GraphKind::Cpdag;
    if (s == "mag") return GraphKind::Mag;
    if (s == "pag") return GraphKind::Pag;
    throw std::invalid_argument("unknown graph kind: " + s);
}

GraphNode make_node(const std::string& id) { return GraphNode{id, id, id, -1}; }

GraphNode make_lag_node(const std::string& variable, int lag) {
    const std::string id = variable + ":" + std::to_string(lag);
    return GraphNode{id, id, variable, lag};
}

MixedGraph::MixedGraph(GraphKind kind, std::vector<GraphNode> nodes)
    : kind_(kind), nodes_(std::move(nodes)) {
    marks_.assign(static_cast<size_t>(n()) * n(), Mark::None);
    for (int i = 0; i < n(); ++i) {
        if (nodes_[i].label.empty()) nodes_[i].label = nodes_[i].id;
        if (!index_.emplace(nodes_[i].id, i).second)
            throw std::invalid_argument("duplicate node id: " + nodes_[i].id);
    }
}

void MixedGraph::check(int a) const {
    if (a < 0 || a >= n()) throw std::invalid_argument("node index out of range");
}

const GraphNode& MixedGraph::node(int i) const {
    check(i);
    return nodes_[i];
}

std::vector<std::string> MixedGraph::node_ids() const {
    std::vector<std::string> ids;
    ids.reserve(nodes_.size());
    for (const auto& nd : nodes_) ids.push_back(nd.id);
    return ids;
}

int MixedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown node id: " + id);
    return it->second;
}

int MixedGraph::find_index(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

bool MixedGraph::has_edge(int a, int b) const {
    check(a);
    check(b);
    return marks_[static_cast<size_t>(a) * n() + b] != Mark::None;
}

Mark MixedGraph::mark(int a, int b) const {
    check(a);
    check(b);
    return marks_[static_cast<size_t>(a) * n() + b];
}

void MixedGraph::add_edge(int a, int b, Mark at_a, Mark at_b) {
    check(a);
    check(b);
    if (a == b) throw std::invalid_argument("self edge at node " + nodes_[a].id);
    if (at_a == Mark::None || at_b == Mark::None)
        throw std::invalid_argument("edge marks must not be none");
    marks_[static_cast<size_t>(a) * n() + b] = at_b;
    marks_[static_cast<size_t>(b) * n() + a] = at_a;
}

void MixedGraph::set_mark(int a, int b, Mark at_b) {
    if (!has_edge(a, b))
        throw std::invalid_argument("no edge between " + nodes_[a].id + " and " + nodes_[b].id);
    if (at_b == Mark::None) throw std::invalid_argument("edge marks must not be none");
    marks_[static_cast<size_t>(a) * n() + b] = at_b;
}

void MixedGraph::remove_edge(int a, int b) {
    check(a);
    check(b);
    marks_[static_cast<size_t>(a) * n() + b] = Mark::None;
    marks_[static_cast<size_t>(b) * n() + a] = Mark::None;
}

int MixedGraph::edge_count() const {
    int c = 0;
    for (int a = 0; a < n(); ++a)
        for (int b = a + 1; b < n(); ++b)
            if (marks_[static_cast<size_t>(a) * n() + b] != Mark::None) ++c;
    return c;
}

Edge MixedGraph::edge(int a, int b) const {
    if (!has_edge(a, b))
        throw std::invalid_argument("no edge between " + nodes_[a].id + " and " + nodes_[b].id);
    return Edge{a, b, mark(b, a), mark(a, b)};
}

std::vector<Edge> MixedGraph::edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < n(); ++a)
        for (int b = a + 1; b < n(); ++b)
            if (has_edge(a, b)) out.push_back(edge(a, b));
    return out;
}

std::vector<int> MixedGraph::adjacent(int a) const {
    check(a);
    std::vector<int> out;
    for (int b = 0; b < n(); ++b)
        if (b != a && marks_[static_cast<size_t>(a) * n() + b] != Mark::None) out.push_back(b);
    return out;
}

std::vector<int> MixedGraph::parents(int a) const {
    check(a);
    std::vector<int> out;
    for (int p = 0; p < n(); ++p)
        if (p != a && mark(p, a) == Mark::Arrow && mark(a, p) == Mark::Tail) out.push_back(p);
    return out;
}

std::vector<int> MixedGraph::children(int a) const {
    check(a);
    std::vector<int> out;
    for (int c = 0; c < n(); ++c)
        if (c != a && mark(a, c) == Mark::Arrow && mark(c, a) == Mark::Tail) out.push_back(c);
    return out;
}

void MixedGraph::validate() const {
    const bool allow_circle = kind_ == GraphKind::Pag;
    for (const Edge& e : edges()) {
        if (!allow_circle && (e.mark_a == Mark::Circle || e.mark_b == Mark::Circle))
            throw std::invalid_argument("circle mark not allowed in " + to_string(kind_) +
                                        " between " + nodes_[e.a].id + " and " + nodes_[e.b].id);
        if (kind_ == GraphKind::Dag) {
            const bool directed = (e.mark_a == Mark::Tail && e.mark_b == Mark::Arrow) ||
                                  (e.mark_a == Mark::Arrow && e.mark_b == Mark::Tail);
            if (!directed)
                throw std::invalid_argument("dag edge must be tail/arrow between " +
                                            nodes_[e.a].id + " and " + nodes_[e.b].id);
        }
    }
    if (kind_ == GraphKind::Dag) {
        topological_order(*this);
    } else if (kind_ == GraphKind::Mag) {
        topological_order(*this); // directed part must be acyclic
        const auto anc = ancestor_matrix(*this);
        for (const Edge& e : edges())
            if (e.mark_a == Mark::Arrow && e.mark_b == Mark::Arrow &&
                (anc[e.a][e.b] || anc[e.b][e.a]))
                throw std::invalid_argument("almost-directed cycle through " + nodes_[e.a].id +
                                            " <-> " + nodes_[e.b].id);
    }
}

std::vector<std::vector<char>> ancestor_matrix(const MixedGraph& g) {
    const int n = g.n();
    std::vector<std::vector<char>> anc(n, std::vector<char>(n, 0));
    for (int s = 0; s < n; ++s) {
        std::vector<int> stack{s};
        anc[s][s] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int c : g.children(v))
                if (!anc[s][c]) {
                    anc[s][c] = 1;
                    stack.push_back(c);
                }
        }
    }
    return anc;
}

std::vector<int> topological_order(const MixedGraph& g) {
    const int n = g.n();
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(g.parents(v).size());
    std::vector<int> order;
    std::deque<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        const int v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (int c : g.children(v))
            if (--indeg[c] == 0) ready.push_back(c);
    }
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("graph has a directed cycle");
    return order;
}

bool is_m_separated(const MixedGraph& g, int x, int y, const std::vector<int>& z) {
    if (g.kind() != GraphKind::Dag && g.kind() != GraphKind::Mag)
        throw std::invalid_argument("m-separation requires a dag or mag");
    const int n = g.n();
    if (x < 0 || x >= n || y < 0 || y >= n) throw std::invalid_argument("node index out of range");
    if (x == y) throw std::invalid_argument("m-separation query with x == y");

    std::vector<char> in_z(n, 0);
    for (int v : z) {
        if (v < 0 || v >= n) throw std::invalid_argument("node index out of range");
        if (v == x || v == y) throw std::invalid_argument("conditioning set contains an endpoint");
        in_z[v] = 1;
    }

    // anz[v]: v is in z or an ancestor of a member of z.
    const auto anc = ancestor_matrix(g);
    std::vector<char> anz(n, 0);
    for (int v = 0; v < n; ++v) {
        if (in_z[v]) { anz[v] = 1; continue; }
        for (int w : z)
            if (anc[v][w]) { anz[v] = 1; break; }
    }

    // Reachability over states (node, entered with an arrowhead at node).
    std::vector<std::array<char, 2>> seen(n, {0, 0});
    std::deque<std::pair<int, int>> queue;
    for (int w : g.adjacent(x)) {
        if (w == y) return false;
        const int head = g.mark(x, w) == Mark::Arrow ? 1 : 0;
        if (!seen[w][head]) {
            seen[w][head] = 1;
            queue.emplace_back(w, head);
        }
    }
    while (!queue.empty()) {
        const auto [v, head] = queue.front();
        queue.pop_front();
        for (int w : g.adjacent(v)) {
            const bool collider = head == 1 && g.mark(w, v) == Mark::Arrow;
            const bool open = collider ? anz[v] != 0 : in_z[v] == 0;
            if (!open) continue;
            if (w == y) return false;
            const int nhead = g.mark(v, w) == Mark::Arrow ? 1 : 0;
            if (!seen[w][nhead]) {
                seen[w][nhead] = 1;
                queue.emplace_back(w, nhead);
            }
        }
    }
    return true;
}

std::vector<int> markov_boundary(const MixedGraph& g, int x) {
    const int n = g.n();
    if (x < 0 || x >= n) throw std::invalid_argument("node index out of range");

    std::vector<char> in_mb(n, 0);
    for (int v : g.adjacent(x)) in_mb[v] = 1;

    // Interior nodes of collider paths out of x: entered and left through
    // arrowheads.
    std::vector<char> interior(n, 0);
    std::vector<int> stack;
    for (int v : g.adjacent(x))
        if (g.mark(x, v) == Mark::Arrow) {
            interior[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : g.adjacent(v)) {
            if (w == x) continue;
            if (!interior[w] && g.mark(v, w) == Mark::Arrow && g.mark(w, v) == Mark::Arrow) {
                interior[w] = 1;
                stack.push_back(w);
            }
        }
    }
    for (int v = 0; v < n; ++v) {
        if (!interior[v]) continue;
        for (int y : g.adjacent(v))
            if (y != x && g.mark(y, v) == Mark::Arrow) in_mb[y] = 1;
    }

    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (v != x && in_mb[v]) out.push_back(v);
    return out;
}

namespace {

// Simple-path DFS for an inducing path from a to b: interior non-colliders
// must be latent, interior colliders must be ancestors of a or b.
bool inducing_path_dfs(const MixedGraph& g, int v, int b, bool arrow_in,
                       const std::vector<char>& latent, const std::vector<char>& anc_ab,
                       std::vector<char>& on_path) {
    for (int w : g.adjacent(v)) {
        if (on_path[w]) continue;
        const bool collider = arrow_in && g.mark(w, v) == Mark::Arrow;
        if (collider ? !anc_ab[v] : !latent[v]) continue;
        if (w == b) return true;
        on_path[w] = 1;
        if (inducing_path_dfs(g, w, b, g.mark(v, w) == Mark::Arrow, latent, anc_ab, on_path))
            return true;
        on_path[w] = 0;
    }
    return false;
}

bool has_inducing_path(const MixedGraph& g, int a, int b, const std::vector<char>& latent,
                       const std::vector<std::vector<char>>& anc) {
    if (g.has_edge(a, b)) return true;
    const int n = g.n();
    std::vector<char> anc_ab(n, 0);
    for (int v = 0; v < n; ++v) anc_ab[v] = anc[v][a] || anc[v][b];
    std::vector<char> on_path(n, 0);
    on_path[a] = 1;
    for (int w : g.adjacent(a)) {
        on_path[w] = 1;
        if (inducing_path_dfs(g, w, b, g.mark(a, w) == Mark::Arrow, latent, anc_ab, on_path))
            return true;
        on_path[w] = 0;
    }
    return false;
}

} // namespace

MixedGraph latent_projection(const MixedGraph& g, const std::vector<int>& observed) {
    if (g.kind() != GraphKind::Dag)
        throw std::invalid_argument("latent projection requires a dag");
    if (observed.empty()) throw std::invalid_argument("observed set is empty");

    std::vector<int> obs = observed;
    std::sort(obs.begin(), obs.end());
    obs.erase(std::unique(obs.begin(), obs.end()), obs.end());
    std::vector<char> is_obs(g.n(), 0);
    std::vector<GraphNode> nodes;
    for (int v : obs) {
        if (v < 0 || v >= g.n()) throw std::invalid_argument("node index out of range");
        is_obs[v] = 1;
        nodes.push_back(g.node(v));
    }
    std::vector<char> latent(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) latent[v] = !is_obs[v];

    const auto anc = ancestor_matrix(g);
    MixedGraph out(GraphKind::Mag, std::move(nodes));
    const int m = static_cast<int>(obs.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const int a = obs[i], b = obs[j];
            if (!has_inducing_path(g, a, b, latent, anc)) continue;
            const Mark at_a = anc[a][b] ? Mark::Tail : Mark::Arrow;
            const Mark at_b = anc[b][a] ? Mark::Tail : Mark::Arrow;
            out.add_edge(i, j, at_a, at_b);
        }
    return out;
}

namespace {

bool undirected(const MixedGraph& g, int a, int b) {
    return g.has_edge(a, b) && g.mark(a, b) == Mark::Tail && g.mark(b, a) == Mark::Tail;
}

bool directed(const MixedGraph& g, int a, int b) {
    return g.has_edge(a, b) && g.mark(a, b) == Mark::Arrow && g.mark(b, a) == Mark::Tail;
}

bool try_direct(MixedGraph& g, int a, int b, const KnowledgeIndex* kn) {
    if (!undirected(g, a, b)) return false;
    if (kn && kn->forbidden(a, b)) return false;
    g.set_mark(a, b, Mark::Arrow);
    return true;
}

} // namespace

void apply_meek_rules(MixedGraph& g, const KnowledgeIndex* kn) {
    const int n = g.n();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int b = 0; b < n; ++b) {
            for (int c : g.adjacent(b)) {
                if (!undirected(g, b, c)) continue;
                // R1: a -> b - c with a, c nonadjacent.
                for (int a : g.adjacent(b)) {
                    if (a == c || !directed(g, a, b)) continue;
                    if (!g.has_edge(a, c) && try_direct(g, b, c, kn)) {
                        changed = true;
                        break;
                    }
                }
                if (!undirected(g, b, c)) continue;
                // R2: b -> v -> c with b - c.
                for (int v : g.adjacent(b)) {
                    if (v == c || !directed(g, b, v)) continue;
                    if (directed(g, v, c) && try_direct(g, b, c, kn)) {
                        changed = true;
                        break;
                    }
                }
                if (!undirected(g, b, c)) continue;
                // R3: b - u -> c and b - w -> c with u, w nonadjacent.
                {
                    std::vector<int> mids;
                    for (int u : g.adjacent(b))
                        if (u != c && undirected(g, b, u) && directed(g, u, c)) mids.push_back(u);
                    bool fired = false;
                    for (size_t i = 0; i < mids.size() && !fired; ++i)
                        for (size_t j = i + 1; j < mids.size() && !fired; ++j)
                            if (!g.has_edge(mids[i], mids[j]) && try_direct(g, b, c, kn)) {
                                changed = true;
                                fired = true;
                            }
                    if (fired) continue;
                }
                if (!undirected(g, b, c)) continue;
                // R4: d -> v -> c chain with d, c nonadjacent and b adjacent
                // to d: orienting c -> b would force either a cycle or a new
                // v-structure d -> b <- c, so b -> c.
                for (int v : g.adjacent(c)) {
                    if (v == b || !directed(g, v, c)) continue;
                    bool fired = false;
                    for (int d : g.adjacent(v)) {
                        if (d == b || d == c || !directed(g, d, v)) continue;
                        if (!g.has_edge(d, c) && g.has_edge(b, d) && try_direct(g, b, c, kn)) {
                            changed = true;
                            fired = true;
                            break;
                        }
                    }
                    if (fired) break;
                }
            }
        }
    }
}

MixedGraph cpdag_of(const MixedGraph& g) {
    if (g.kind() != GraphKind::Dag) throw std::invalid_argument("cpdag_of requires a dag");
    MixedGraph out(GraphKind::Cpdag, g.nodes());
    for (const Edge& e : g.edges()) out.add_edge(e.a, e.b, Mark::Tail, Mark::Tail);
    for (int c = 0; c < g.n(); ++c) {
        const auto ps = g.parents(c);
        for (size_t i = 0; i < ps.size(); ++i)
            for (size_t j = i + 1; j < ps.size(); ++j)
                if (!g.has_edge(ps[i], ps[j])) {
                    out.set_mark(ps[i], c, Mark::Arrow);
                    out.set_mark(ps[j], c, Mark::Arrow);
                }
    }
    apply_meek_rules(out);
    return out;
}

namespace {

bool path_step_ok(const MixedGraph& g, int u, int v, PathKind kind) {
    if (!g.has_edge(u, v)) return false;
    if (kind == PathKind::Any) return true;
    const Mark near = g.mark(v, u);
    const Mark far = g.mark(u, v);
    if (kind == PathKind::Directed) return near == Mark::Tail && far == Mark::Arrow;
    return (near == Mark::Tail || near == Mark::Circle) &&
           (far == Mark::Arrow || far == Mark::Circle);
}

} // namespace

std::optional<std::vector<int>> find_path(const MixedGraph& g, int a, int b, PathKind kind) {
    const int n = g.n();
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("node index out of range");
    if (a == b) throw std::invalid_argument("path query with identical endpoints");

    // Distance to b over admissible edges, walked backwards.
    std::vector<int> dist(n, -1);
    dist[b] = 0;
    std::deque<int> queue{b};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : g.adjacent(v))
            if (dist[u] < 0 && path_step_ok(g, u, v, kind)) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    if (dist[a] < 0) return std::nullopt;

    std::vector<int> path{a};
    int cur = a;
    while (cur != b) {
        for (int w = 0; w < n; ++w)
            if (dist[w] == dist[cur] - 1 && path_step_ok(g, cur, w, kind)) {
                path.push_back(w);
                cur = w;
                break;
            }
    }
    return path;
}

std::optional<std::vector<int>> directed_path(const MixedGraph& g, int a, int b) {
    return find_path(g, a, b, PathKind::Directed);
}

std::optional<std::vector<int>> potentially_directed_path(const MixedGraph& g, int a, int b) {
    return find_path(g, a, b, PathKind::PotentiallyDirected);
}

std::optional<std::vector<int>> any_path(const MixedGraph& g, int a, int b) {
    return find_path(g, a, b, PathKind::Any);
}

std::optional<Edge> edge_between(const MixedGraph& g, int a, int b) {
    if (!g.has_edge(a, b)) return std::nullopt;
    return g.edge(a, b);
}

MixedGraph path_subgraph(const MixedGraph& g, const std::vector<int>& path) {
    std::vector<GraphNode> nodes;
    for (int v : path) nodes.push_back(g.node(v));
    MixedGraph out(g.kind(), std::move(nodes));
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const Edge e = g.edge(path[i], path[i + 1]);
        out.add_edge(static_cast<int>(i), static_cast<int>(i + 1), e.mark_a, e.mark_b);
    }
    return out;
}

} // namespace autocd
