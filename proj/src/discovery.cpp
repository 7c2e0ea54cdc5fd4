#include "autocd/discovery.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace autocd {

std::string to_string(ClAlgorithm a) {
    switch (a) {
    case ClAlgorithm::Pc: return "pc";
    case ClAlgorithm::PcStable: return "pc_stable";
    case ClAlgorithm::Cpc: return "cpc";
    case ClAlgorithm::Fci: return "fci";
    }
    throw std::invalid_argument("unknown algorithm");
}

ClAlgorithm cl_algorithm_from_string(const std::string& s) {
    if (s == "pc") return ClAlgorithm::Pc;
    if (s == "pc_stable") return ClAlgorithm::PcStable;
    if (s == "cpc") return ClAlgorithm::Cpc;
    if (s == "fci") return ClAlgorithm::Fci;
    throw std::invalid_argument("unknown algorithm: " + s);
}

namespace {

bool next_combination(std::vector<int>& c, int m) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < m - (k - i)) {
            c[i]++;
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::pair<int, int> pair_key(int x, int y) { return {std::min(x, y), std::max(x, y)}; }

// Failed, degenerate and low-power tests all count as dependence; only
// hard failures are worth a warning.
bool independent(CiSource& ci, const std::vector<GraphNode>& nodes, int x, int y,
                 const std::vector<int>& z, double alpha, std::vector<std::string>* warnings) {
    try {
        CiResult r = ci.test(x, y, z);
        if (r.flag != CiResult::Flag::Ok) return false;
        return r.p_value > alpha;
    } catch (const std::exception& e) {
        if (warnings)
            warnings->push_back("ci test " + nodes[x].id + " vs " + nodes[y].id +
                                " failed: " + e.what());
        return false;
    }
}

std::vector<std::string> ids_of(const std::vector<GraphNode>& nodes) {
    std::vector<std::string> ids;
    ids.reserve(nodes.size());
    for (const auto& n : nodes) ids.push_back(n.id);
    return ids;
}

// Scans subsets of `pool` of size l; on the first separating set, stores it
// in *sepset and returns true.
bool find_separator(CiSource& ci, const std::vector<GraphNode>& nodes, int x, int y,
                    const std::vector<int>& pool, int l, double alpha,
                    std::vector<std::string>* warnings, std::vector<int>* sepset) {
    int m = static_cast<int>(pool.size());
    if (l > m) return false;
    std::vector<int> comb(l);
    for (int i = 0; i < l; ++i) comb[i] = i;
    do {
        std::vector<int> z(l);
        for (int i = 0; i < l; ++i) z[i] = pool[comb[i]];
        if (independent(ci, nodes, x, y, z, alpha, warnings)) {
            *sepset = z;
            std::sort(sepset->begin(), sepset->end());
            return true;
        }
    } while (l > 0 && next_combination(comb, m));
    return false;
}

bool is_parent(const MixedGraph& g, int a, int c) {
    return g.has_edge(a, c) && g.mark(c, a) == Mark::Tail && g.mark(a, c) == Mark::Arrow;
}

// x *-> z <-* y for each unshielded triple whose separating set omits z.
// Far-end marks stay as they are, so the same pass serves CPDAGs and PAGs.
void orient_colliders(MixedGraph& g, const SepsetMap& sepsets) {
    int n = g.n();
    for (int z = 0; z < n; ++z) {
        std::vector<int> adj = g.adjacent(z);
        for (size_t i = 0; i < adj.size(); ++i)
            for (size_t j = i + 1; j < adj.size(); ++j) {
                int x = adj[i], y = adj[j];
                if (g.has_edge(x, y)) continue;
                auto it = sepsets.find(pair_key(x, y));
                if (it == sepsets.end()) continue;
                const std::vector<int>& s = it->second;
                if (std::find(s.begin(), s.end(), z) != s.end()) continue;
                g.set_mark(x, z, Mark::Arrow);
                g.set_mark(y, z, Mark::Arrow);
            }
    }
}

// Conservative variant: every subset of either adjacency that separates
// (x, y) gets a vote; z is a collider only when no separating set contains
// it, a non-collider when all do, and ambiguous triples stay unoriented.
void orient_colliders_cpc(MixedGraph& g, CiSource& ci, const std::vector<GraphNode>& nodes,
                          double alpha, int cap, std::vector<std::string>* warnings) {
    int n = g.n();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (g.has_edge(x, y)) continue;
            std::vector<int> common;
            for (int z : g.adjacent(x))
                if (g.has_edge(z, y)) common.push_back(z);
            if (common.empty()) continue;

            std::vector<std::vector<int>> separators;
            for (int side = 0; side < 2; ++side) {
                int a = side == 0 ? x : y, b = side == 0 ? y : x;
                std::vector<int> pool = g.adjacent(a);
                pool.erase(std::remove(pool.begin(), pool.end(), b), pool.end());
                int top = std::min(cap, static_cast<int>(pool.size()));
                for (int l = 0; l <= top; ++l) {
                    std::vector<int> comb(l);
                    for (int i = 0; i < l; ++i) comb[i] = i;
                    do {
                        std::vector<int> z(l);
                        for (int i = 0; i < l; ++i) z[i] = pool[comb[i]];
                        if (independent(ci, nodes, x, y, z, alpha, warnings))
                            separators.push_back(z);
                    } while (l > 0 && next_combination(comb, static_cast<int>(pool.size())));
                }
            }
            if (separators.empty()) continue;
            for (int z : common) {
                int votes = 0;
                for (const auto& s : separators)
                    if (std::find(s.begin(), s.end(), z) != s.end()) votes++;
                if (votes == 0) {
                    g.set_mark(x, z, Mark::Arrow);
                    g.set_mark(y, z, Mark::Arrow);
                }
            }
        }
}

void apply_pc_knowledge(MixedGraph& g, const KnowledgeIndex& kn) {
    if (kn.empty()) return;
    for (const Edge& e : g.edges()) {
        if (kn.forbidden(e.a, e.b)) { // edge can only run b -> a
            g.set_mark(e.b, e.a, Mark::Arrow);
            g.set_mark(e.a, e.b, Mark::Tail);
        } else if (kn.forbidden(e.b, e.a)) {
            g.set_mark(e.a, e.b, Mark::Arrow);
            g.set_mark(e.b, e.a, Mark::Tail);
        }
    }
}

// Without assuming sufficiency a forbidden cause still allows confounding,
// so knowledge only pins arrowheads; explicit required edges pin both ends.
void apply_fci_knowledge(MixedGraph& g, const KnowledgeIndex& kn) {
    if (kn.empty()) return;
    for (const Edge& e : g.edges()) {
        if (kn.forbidden(e.a, e.b)) g.set_mark(e.b, e.a, Mark::Arrow);
        if (kn.forbidden(e.b, e.a)) g.set_mark(e.a, e.b, Mark::Arrow);
        if (kn.required(e.a, e.b)) {
            g.set_mark(e.b, e.a, Mark::Tail);
            g.set_mark(e.a, e.b, Mark::Arrow);
        } else if (kn.required(e.b, e.a)) {
            g.set_mark(e.a, e.b, Mark::Tail);
            g.set_mark(e.b, e.a, Mark::Arrow);
        }
    }
}

// Possible-D-Sep(x): nodes reachable along paths whose every inner node is
// either a collider or part of a triangle with its path neighbors.
std::vector<int> possible_d_sep(const MixedGraph& g, int x) {
    int n = g.n();
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> queue;
    for (int b : g.adjacent(x)) {
        queue.push_back({x, b});
        seen.insert({x, b});
    }
    std::vector<char> in(n, 0);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [a, b] = queue[qi];
        in[b] = 1;
        for (int c : g.adjacent(b)) {
            if (c == a || seen.count({b, c})) continue;
            bool collider = g.mark(a, b) == Mark::Arrow && g.mark(c, b) == Mark::Arrow;
            if (collider || g.has_edge(a, c)) {
                seen.insert({b, c});
                queue.push_back({b, c});
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (in[v] && v != x) out.push_back(v);
    return out;
}

struct ZhangCtx {
    MixedGraph& g;
    const SepsetMap& sepsets;
    bool changed = false;

    bool circle_at(int from, int at) { return g.mark(from, at) == Mark::Circle; }
    void put(int from, int at, Mark m) {
        if (g.mark(from, at) != Mark::Circle || m == Mark::Circle) return;
        g.set_mark(from, at, m);
        changed = true;
    }
};

// R1: a *-> b o-* c with a, c nonadjacent forces b -> c.
void zhang_r1(ZhangCtx& ctx) {
    MixedGraph& g = ctx.g;
    for (int b = 0; b < g.n(); ++b)
        for (int c : g.adjacent(b)) {
            if (!ctx.circle_at(c, b)) continue;
            for (int a : g.adjacent(b)) {
                if (a == c || g.has_edge(a, c)) continue;
                if (g.mark(a, b) != Mark::Arrow) continue;
                ctx.put(c, b, Mark::Tail);
                ctx.put(b, c, Mark::Arrow);
                break;
            }
        }
}

// R2: a chain a -> b *-> c or a *-> b -> c plus a *-o c forces a *-> c.
void zhang_r2(ZhangCtx& ctx) {
    MixedGraph& g = ctx.g;
    for (int a = 0; a < g.n(); ++a)
        for (int c : g.adjacent(a)) {
            if (!ctx.circle_at(a, c)) continue;
            for (int b : g.adjacent(a)) {
                if (b == c || !g.has_edge(b, c)) continue;
                bool first = is_parent(g, a, b) && g.mark(b, c) == Mark::Arrow;
                bool second = g.mark(a, b) == Mark::Arrow && is_parent(g, b, c);
                if (first || second) {
                    ctx.put(a, c, Mark::Arrow);
                    break;
                }
            }
        }
}

// R3: a *-> b <-* c, a *-o d o-* c, a, c nonadjacent, d *-o b forces d *-> b.
void zhang_r3(ZhangCtx& ctx) {
    MixedGraph& g = ctx.g;
    for (int b = 0; b < g.n(); ++b) {
        std::vector<int> adj = g.adjacent(b);
        auto witnessed = [&](int d) {
            for (size_t i = 0; i < adj.size(); ++i)
                for (size_t j = i + 1; j < adj.size(); ++j) {
                    int a = adj[i], c = adj[j];
                    if (a == d || c == d || g.has_edge(a, c)) continue;
                    if (g.mark(a, b) != Mark::Arrow || g.mark(c, b) != Mark::Arrow) continue;
                    if (!g.has_edge(a, d) || !g.has_edge(c, d)) continue;
                    if (g.mark(a, d) != Mark::Circle || g.mark(c, d) != Mark::Circle) continue;
                    return true;
                }
            return false;
        };
        for (int d : adj)
            if (ctx.circle_at(d, b) && witnessed(d)) ctx.put(d, b, Mark::Arrow);
    }
}

// R4: a discriminating path <d, ..., a, b, c> for b (inner nodes are
// colliders and parents of c, d and c nonadjacent) settles the circle at b:
// b -> c when b separated d from c, a <-> b <-> c otherwise.
void zhang_r4(ZhangCtx& ctx) {
    MixedGraph& g = ctx.g;
    int n = g.n();
    for (int b = 0; b < n; ++b)
        for (int c : g.adjacent(b)) {
            if (!ctx.circle_at(c, b)) continue;
            for (int a : g.adjacent(b)) {
                if (a == c) continue;
                if (g.mark(a, b) != Mark::Arrow || !is_parent(g, a, c)) continue;
                std::set<std::pair<int, int>> seen;
                std::vector<std::pair<int, int>> queue = {{a, b}};
                seen.insert({a, b});
                for (size_t qi = 0; qi < queue.size(); ++qi) {
                    auto [v, w] = queue[qi];
                    for (int u : g.adjacent(v)) {
                        if (u == w || u == b || u == c) continue;
                        if (g.mark(u, v) != Mark::Arrow || g.mark(w, v) != Mark::Arrow)
                            continue; // v must be a collider on the path
                        if (!g.has_edge(u, c)) {
                            auto it = ctx.sepsets.find(pair_key(u, c));
                            if (it == ctx.sepsets.end()) continue;
                            const std::vector<int>& s = it->second;
                            if (std::find(s.begin(), s.end(), b) != s.end()) {
                                ctx.put(c, b, Mark::Tail);
                                ctx.put(b, c, Mark::Arrow);
                            } else {
                                ctx.put(a, b, Mark::Arrow);
                                ctx.put(b, a, Mark::Arrow);
                                ctx.put(b, c, Mark::Arrow);
                                ctx.put(c, b, Mark::Arrow);
                            }
                            return;
                        }
                        if (is_parent(g, u, c) && !seen.count({u, v})) {
                            seen.insert({u, v});
                            queue.push_back({u, v});
                        }
                    }
                }
            }
        }
}

bool pd_step_ok(const MixedGraph& g, int u, int v) {
    Mark at_u = g.mark(v, u), at_v = g.mark(u, v);
    return (at_u == Mark::Circle || at_u == Mark::Tail) &&
           (at_v == Mark::Circle || at_v == Mark::Arrow);
}

// Depth-first search for an uncovered potentially directed path from `cur`
// to `target` (consecutive path neighbors nonadjacent). `prev` guards the
// uncoveredness of the next hop.
bool uncovered_pd_path(const MixedGraph& g, int prev, int cur, int target,
                       std::vector<char>& on_path) {
    if (cur == target) return true;
    for (int nxt : g.adjacent(cur)) {
        if (on_path[nxt] || nxt == prev) continue;
        if (g.has_edge(prev, nxt)) continue;
        if (!pd_step_ok(g, cur, nxt)) continue;
        on_path[nxt] = 1;
        if (uncovered_pd_path(g, cur, nxt, target, on_path)) {
            on_path[nxt] = 0;
            return true;
        }
        on_path[nxt] = 0;
    }
    return false;
}

// First hops m such that some uncovered p.d. path from a to target starts
// a, m, ...
std::vector<int> uncovered_pd_first_steps(const MixedGraph& g, int a, int target) {
    std::vector<int> out;
    for (int m : g.adjacent(a)) {
        if (!pd_step_ok(g, a, m)) continue;
        if (m == target) {
            out.push_back(m);
            continue;
        }
        std::vector<char> on_path(g.n(), 0);
        on_path[a] = 1;
        on_path[m] = 1;
        if (uncovered_pd_path(g, a, m, target, on_path)) out.push_back(m);
    }
    return out;
}

// R8: a -> b -> c or a -o b -> c with a o-> c forces the tail a -> c.
void zhang_r8(ZhangCtx& ctx) {
    MixedGraph& g = ctx.g;
    for (int a = 0; a < g.n(); ++a)
        for (int c : g.adjacent(a)) {
            if (g.mark(c, a) != Mark::Circle || g.mark(a, c) != Mark::Arrow) continue;
            for (int b : g.adjacent(a)) {
                if (b == c || !g.has_edge(b, c) || !is_parent(g, b, c)) continue;
                bool chain = is_parent(g, a, b);
                bool tail_circle = g.mark(b, a) == Mark::Tail && g.mark(a, b) == Mark::Circle;
                if (chain || tail_circle) {
                    ctx.put(c, a, Mark::Tail);
                    break;
                }
            }
        }
}

// R9: a o-> c with an uncovered p.d. path a, m, ..., c where m and c are
// nonadjacent forces the tail a -> c.
void zhang_r9(ZhangCtx& ctx) {
    MixedGraph& g = ctx.g;
    for (int a = 0; a < g.n(); ++a)
        for (int c : g.adjacent(a)) {
            if (g.mark(c, a) != Mark::Circle || g.mark(a, c) != Mark::Arrow) continue;
            for (int m : uncovered_pd_first_steps(g, a, c)) {
                if (m == c || g.has_edge(m, c)) continue;
                ctx.put(c, a, Mark::Tail);
                break;
            }
        }
}

// R10: a o-> c, two parents b and d of c reached from a by uncovered p.d.
// paths whose distinct first hops are nonadjacent force the tail a -> c.
void zhang_r10(ZhangCtx& ctx) {
    MixedGraph& g = ctx.g;
    for (int a = 0; a < g.n(); ++a)
        for (int c : g.adjacent(a)) {
            if (g.mark(c, a) != Mark::Circle || g.mark(a, c) != Mark::Arrow) continue;
            std::vector<int> parents;
            for (int p : g.adjacent(c))
                if (p != a && is_parent(g, p, c)) parents.push_back(p);
            bool done = false;
            for (size_t i = 0; i < parents.size() && !done; ++i)
                for (size_t j = 0; j < parents.size() && !done; ++j) {
                    if (i == j) continue;
                    for (int m : uncovered_pd_first_steps(g, a, parents[i])) {
                        if (done) break;
                        for (int w : uncovered_pd_first_steps(g, a, parents[j])) {
                            if (m == w || g.has_edge(m, w)) continue;
                            ctx.put(c, a, Mark::Tail);
                            done = true;
                            break;
                        }
                    }
                }
        }
}

void zhang_closure(MixedGraph& g, const SepsetMap& sepsets) {
    ZhangCtx ctx{g, sepsets};
    do {
        ctx.changed = false;
        zhang_r1(ctx);
        zhang_r2(ctx);
        zhang_r3(ctx);
        zhang_r4(ctx);
        zhang_r8(ctx);
        zhang_r9(ctx);
        zhang_r10(ctx);
    } while (ctx.changed);
}

} // namespace

SkeletonResult learn_skeleton(CiSource& ci, const std::vector<GraphNode>& nodes,
                              const ClConfig& cfg, std::vector<std::string>* warnings) {
    int n = static_cast<int>(nodes.size());
    if (n < 2) throw std::invalid_argument("learn_skeleton: need at least 2 columns");
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
        throw std::invalid_argument("learn_skeleton: alpha out of [0,1]");

    bool fci = cfg.algorithm == ClAlgorithm::Fci;
    bool stable = cfg.algorithm == ClAlgorithm::PcStable || fci;
    Mark blank = fci ? Mark::Circle : Mark::Tail;
    MixedGraph g(fci ? GraphKind::Pag : GraphKind::Cpdag, nodes);
    KnowledgeIndex kn(cfg.knowledge, ids_of(nodes));
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (kn.forbidden(x, y) && kn.forbidden(y, x)) continue;
            g.add_edge(x, y, blank, blank);
        }

    SepsetMap sepsets;
    int cap = cfg.max_cond_size ? *cfg.max_cond_size : n;
    for (int l = 0; l <= cap; ++l) {
        std::vector<std::vector<int>> snapshot(n);
        if (stable)
            for (int v = 0; v < n; ++v) snapshot[v] = g.adjacent(v);
        bool deep_enough = false;
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                if (!g.has_edge(x, y)) continue;
                for (int side = 0; side < 2 && g.has_edge(x, y); ++side) {
                    int a = side == 0 ? x : y, b = side == 0 ? y : x;
                    std::vector<int> pool = stable ? snapshot[a] : g.adjacent(a);
                    pool.erase(std::remove(pool.begin(), pool.end(), b), pool.end());
                    if (static_cast<int>(pool.size()) < l) continue;
                    if (static_cast<int>(pool.size()) > l) deep_enough = true;
                    std::vector<int> sep;
                    if (find_separator(ci, nodes, x, y, pool, l, cfg.alpha, warnings, &sep)) {
                        g.remove_edge(x, y);
                        sepsets[pair_key(x, y)] = sep;
                    }
                }
            }
        if (!deep_enough) break;
    }
    return {std::move(g), std::move(sepsets)};
}

MixedGraph run_pc(CiSource& ci, const std::vector<GraphNode>& nodes, const ClConfig& cfg,
                  std::vector<std::string>* warnings) {
    if (cfg.algorithm == ClAlgorithm::Fci)
        throw std::invalid_argument("run_pc: config selects fci");
    SkeletonResult sk = learn_skeleton(ci, nodes, cfg, warnings);
    MixedGraph g = std::move(sk.graph);
    KnowledgeIndex kn(cfg.knowledge, ids_of(nodes));
    if (cfg.algorithm == ClAlgorithm::Cpc) {
        int cap = cfg.max_cond_size ? *cfg.max_cond_size : g.n();
        orient_colliders_cpc(g, ci, nodes, cfg.alpha, cap, warnings);
    } else {
        orient_colliders(g, sk.sepsets);
    }
    apply_pc_knowledge(g, kn);
    apply_meek_rules(g, kn.empty() ? nullptr : &kn);
    return g;
}

MixedGraph run_fci(CiSource& ci, const std::vector<GraphNode>& nodes, const ClConfig& cfg,
                   std::vector<std::string>* warnings) {
    ClConfig fci_cfg = cfg;
    fci_cfg.algorithm = ClAlgorithm::Fci;
    SkeletonResult sk = learn_skeleton(ci, nodes, fci_cfg, warnings);
    MixedGraph g = std::move(sk.graph);
    int n = g.n();
    KnowledgeIndex kn(cfg.knowledge, ids_of(nodes));
    orient_colliders(g, sk.sepsets);

    // Possible-D-Sep pruning: sets snapshot before removals
    int cap = fci_cfg.max_cond_size ? *fci_cfg.max_cond_size : n;
    std::vector<std::vector<int>> pds(n);
    for (int v = 0; v < n; ++v) pds[v] = possible_d_sep(g, v);
    for (const Edge& e : g.edges()) {
        for (int side = 0; side < 2 && g.has_edge(e.a, e.b); ++side) {
            int s = side == 0 ? e.a : e.b;
            std::vector<int> pool;
            for (int v : pds[s])
                if (v != e.a && v != e.b) pool.push_back(v);
            int top = std::min(cap, static_cast<int>(pool.size()));
            for (int l = 0; l <= top && g.has_edge(e.a, e.b); ++l) {
                std::vector<int> sep;
                if (find_separator(ci, nodes, e.a, e.b, pool, l, cfg.alpha, warnings, &sep)) {
                    g.remove_edge(e.a, e.b);
                    sk.sepsets[pair_key(e.a, e.b)] = sep;
                }
            }
        }
    }

    for (const Edge& e : g.edges()) {
        g.set_mark(e.a, e.b, Mark::Circle);
        g.set_mark(e.b, e.a, Mark::Circle);
    }
    orient_colliders(g, sk.sepsets);
    apply_fci_knowledge(g, kn);
    zhang_closure(g, sk.sepsets);
    return g;
}

SkeletonResult learn_skeleton(const Dataset& d, const ClConfig& cfg,
                              std::vector<std::string>* warnings) {
    CiTester ci(d, cfg.ci);
    ClConfig c = cfg;
    if (!c.max_cond_size) c.max_cond_size = 4;
    return learn_skeleton(ci, d.nodes(), c, warnings);
}

MixedGraph run_pc(const Dataset& d, const ClConfig& cfg, std::vector<std::string>* warnings) {
    CiTester ci(d, cfg.ci);
    ClConfig c = cfg;
    if (!c.max_cond_size) c.max_cond_size = 4;
    return run_pc(ci, d.nodes(), c, warnings);
}

MixedGraph run_fci(const Dataset& d, const ClConfig& cfg, std::vector<std::string>* warnings) {
    CiTester ci(d, cfg.ci);
    ClConfig c = cfg;
    if (!c.max_cond_size) c.max_cond_size = 4;
    return run_fci(ci, d.nodes(), c, warnings);
}

MixedGraph run_discovery(const Dataset& d, const ClConfig& cfg,
                         std::vector<std::string>* warnings) {
    return cfg.algorithm == ClAlgorithm::Fci ? run_fci(d, cfg, warnings)
                                             : run_pc(d, cfg, warnings);
}

Knowledge tier_knowledge(const std::vector<GraphNode>& nodes) {
    std::map<int, std::vector<std::string>, std::greater<int>> by_lag;
    for (const auto& n : nodes) {
        if (n.lag < 0 || n.variable.empty())
            throw std::invalid_argument("tier_knowledge: node " + n.id + " has no lag metadata");
        by_lag[n.lag].push_back(n.id);
    }
    Knowledge kn;
    for (auto& [lag, ids] : by_lag) kn.tiers.push_back(std::move(ids));
    return kn;
}

Knowledge tier_knowledge(const Dataset& d) {
    if (!d.has_lag_meta())
        throw std::invalid_argument("tier_knowledge: dataset has no lag metadata");
    return tier_knowledge(d.nodes());
}

} // namespace autocd
