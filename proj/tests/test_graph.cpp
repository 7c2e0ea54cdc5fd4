#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdint>

#include "autocd/graph.hpp"
#include "autocd/graph_io.hpp"
#include "autocd/rng.hpp"
#include "oracles.hpp"

using namespace autocd;
namespace T = autocd::testing;

namespace {

MixedGraph make_dag(const std::vector<std::string>& ids,
                    const std::vector<std::pair<std::string, std::string>>& arcs) {
    std::vector<GraphNode> nodes;
    for (const auto& id : ids) nodes.push_back(make_node(id));
    MixedGraph g(GraphKind::Dag, std::move(nodes));
    for (const auto& [a, b] : arcs)
        g.add_edge(g.index_of(a), g.index_of(b), Mark::Tail, Mark::Arrow);
    return g;
}

std::vector<std::string> ids_of(const MixedGraph& g, const std::vector<int>& idx) {
    std::vector<std::string> out;
    for (int i : idx) out.push_back(g.node(i).id);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("mark and kind strings round-trip") {
    for (Mark m : {Mark::Tail, Mark::Arrow, Mark::Circle})
        CHECK(mark_from_string(to_string(m)) == m);
    for (GraphKind k : {GraphKind::Dag, GraphKind::Cpdag, GraphKind::Mag, GraphKind::Pag})
        CHECK(kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(mark_from_string("dot"), std::invalid_argument);
    CHECK_THROWS_AS(kind_from_string("pdag"), std::invalid_argument);
}

TEST_CASE("edge bookkeeping") {
    MixedGraph g = make_dag({"A", "B", "C"}, {{"A", "B"}});
    const int a = g.index_of("A"), b = g.index_of("B"), c = g.index_of("C");

    CHECK(g.has_edge(a, b));
    CHECK(g.mark(a, b) == Mark::Arrow);
    CHECK(g.mark(b, a) == Mark::Tail);
    CHECK(g.mark(a, c) == Mark::None);
    CHECK(g.parents(b) == std::vector<int>{a});
    CHECK(g.children(a) == std::vector<int>{b});
    CHECK(g.edge_count() == 1);

    const auto es = g.edges();
    REQUIRE(es.size() == 1);
    CHECK(es[0].a == a);
    CHECK(es[0].b == b);
    CHECK(es[0].mark_a == Mark::Tail);
    CHECK(es[0].mark_b == Mark::Arrow);

    g.remove_edge(a, b);
    CHECK_FALSE(g.has_edge(b, a));
    CHECK_THROWS_AS(g.set_mark(a, b, Mark::Arrow), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(a, a, Mark::Tail, Mark::Arrow), std::invalid_argument);
    CHECK_THROWS_AS(g.index_of("Z"), std::invalid_argument);
    CHECK(g.find_index("Z") == -1);

    std::vector<GraphNode> dup{make_node("A"), make_node("A")};
    CHECK_THROWS_AS(MixedGraph(GraphKind::Dag, dup), std::invalid_argument);
}

TEST_CASE("m-separation on chains and colliders") {
    MixedGraph chain = make_dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    CHECK(is_m_separated(chain, 0, 2, {1}));
    CHECK_FALSE(is_m_separated(chain, 0, 2, {}));

    MixedGraph collider = make_dag({"A", "B", "C"}, {{"A", "B"}, {"C", "B"}});
    CHECK_FALSE(is_m_separated(collider, 0, 2, {1}));
    CHECK(is_m_separated(collider, 0, 2, {}));
}

TEST_CASE("m-separation input validation") {
    MixedGraph g = make_dag({"A", "B", "C"}, {{"A", "B"}});
    CHECK_THROWS_AS(is_m_separated(g, 0, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(is_m_separated(g, 0, 1, {1}), std::invalid_argument);
    CHECK_THROWS_AS(is_m_separated(g, 0, 5, {}), std::invalid_argument);
    g.set_kind(GraphKind::Cpdag);
    CHECK_THROWS_AS(is_m_separated(g, 0, 1, {}), std::invalid_argument);
}

TEST_CASE("m-separation matches path enumeration on random dags") {
    Rng rng(2024001);
    for (int rep = 0; rep < 40; ++rep) {
        MixedGraph g = T::random_dag(6, 0.35, rng);
        for (int x = 0; x < 6; ++x)
            for (int y = x + 1; y < 6; ++y) {
                std::vector<int> rest;
                for (int v = 0; v < 6; ++v)
                    if (v != x && v != y) rest.push_back(v);
                for (int mask = 0; mask < 16; ++mask) {
                    std::vector<int> z;
                    for (int i = 0; i < 4; ++i)
                        if (mask & (1 << i)) z.push_back(rest[i]);
                    CHECK(is_m_separated(g, x, y, z) == T::oracle_m_separated(g, x, y, z));
                }
            }
    }
}

TEST_CASE("m-separation matches path enumeration on projected mags") {
    Rng rng(2024002);
    for (int rep = 0; rep < 15; ++rep) {
        MixedGraph dag = T::random_dag(8, 0.3, rng);
        std::vector<int> observed{0, 1, 2, 3, 4, 5};
        MixedGraph mag = latent_projection(dag, observed);
        mag.validate();
        const int m = mag.n();
        for (int x = 0; x < m; ++x)
            for (int y = x + 1; y < m; ++y) {
                std::vector<int> rest;
                for (int v = 0; v < m; ++v)
                    if (v != x && v != y) rest.push_back(v);
                for (int mask = 0; mask < (1 << rest.size()); ++mask) {
                    std::vector<int> z;
                    for (size_t i = 0; i < rest.size(); ++i)
                        if (mask & (1 << i)) z.push_back(rest[i]);
                    CHECK(is_m_separated(mag, x, y, z) == T::oracle_m_separated(mag, x, y, z));
                }
            }
    }
}

TEST_CASE("markov boundary on small dags") {
    MixedGraph collider = make_dag({"A", "B", "C"}, {{"A", "C"}, {"B", "C"}});
    CHECK(ids_of(collider, markov_boundary(collider, collider.index_of("A"))) ==
          std::vector<std::string>{"B", "C"});

    MixedGraph chain = make_dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    CHECK(ids_of(chain, markov_boundary(chain, chain.index_of("B"))) ==
          std::vector<std::string>{"A", "C"});
}

TEST_CASE("markov boundary equals parents+children+spouses on dags") {
    Rng rng(2024003);
    for (int rep = 0; rep < 30; ++rep) {
        MixedGraph g = T::random_dag(7, 0.3, rng);
        for (int x = 0; x < 7; ++x) {
            std::vector<char> expect(7, 0);
            for (int p : g.parents(x)) expect[p] = 1;
            for (int c : g.children(x)) {
                expect[c] = 1;
                for (int s : g.parents(c))
                    if (s != x) expect[s] = 1;
            }
            std::vector<int> want;
            for (int v = 0; v < 7; ++v)
                if (expect[v]) want.push_back(v);
            CHECK(markov_boundary(g, x) == want);
        }
    }
}

TEST_CASE("markov boundary is the unique minimal separator set") {
    Rng rng(2024004);
    for (int rep = 0; rep < 8; ++rep) {
        MixedGraph g = T::random_dag(7, 0.3, rng);
        for (int x = 0; x < 7; ++x) {
            const auto blankets = T::oracle_minimal_blankets(g, x);
            REQUIRE(blankets.size() == 1);
            CHECK(blankets[0] == markov_boundary(g, x));
        }
    }
}

TEST_CASE("markov boundary uses definite colliders only on pags") {
    std::vector<GraphNode> nodes{make_node("X"), make_node("C"), make_node("Y")};
    MixedGraph g(GraphKind::Pag, nodes);
    g.add_edge(0, 1, Mark::Circle, Mark::Arrow);
    g.add_edge(2, 1, Mark::Circle, Mark::Arrow);
    CHECK(ids_of(g, markov_boundary(g, 0)) == std::vector<std::string>{"C", "Y"});

    MixedGraph h(GraphKind::Pag, nodes);
    h.add_edge(0, 1, Mark::Circle, Mark::Circle);
    h.add_edge(2, 1, Mark::Circle, Mark::Circle);
    CHECK(ids_of(h, markov_boundary(h, 0)) == std::vector<std::string>{"C"});
}

TEST_CASE("latent projection of chains and forks") {
    MixedGraph chain = make_dag({"A", "L", "B"}, {{"A", "L"}, {"L", "B"}});
    MixedGraph proj = latent_projection(chain, {0, 2});
    REQUIRE(proj.n() == 2);
    CHECK(proj.kind() == GraphKind::Mag);
    CHECK(proj.mark(0, 1) == Mark::Arrow);
    CHECK(proj.mark(1, 0) == Mark::Tail);

    MixedGraph fork = make_dag({"A", "L", "B"}, {{"L", "A"}, {"L", "B"}});
    MixedGraph proj2 = latent_projection(fork, {0, 2});
    CHECK(proj2.mark(0, 1) == Mark::Arrow);
    CHECK(proj2.mark(1, 0) == Mark::Arrow);

    CHECK_THROWS_AS(latent_projection(chain, {}), std::invalid_argument);
}

TEST_CASE("latent projection with no latents re-marks the dag") {
    Rng rng(2024005);
    for (int rep = 0; rep < 20; ++rep) {
        MixedGraph g = T::random_dag(7, 0.3, rng);
        std::vector<int> all(7);
        for (int i = 0; i < 7; ++i) all[i] = i;
        MixedGraph proj = latent_projection(g, all);
        CHECK(T::same_adjacencies(g, proj));
        for (const Edge& e : g.edges()) {
            CHECK(proj.mark(e.a, e.b) == e.mark_b);
            CHECK(proj.mark(e.b, e.a) == e.mark_a);
        }
    }
}

TEST_CASE("latent projection preserves observable separation") {
    Rng rng(2024006);
    for (int rep = 0; rep < 20; ++rep) {
        MixedGraph dag = T::random_dag(8, 0.3, rng);
        std::vector<int> observed{0, 1, 2, 3, 4, 5};
        MixedGraph mag = latent_projection(dag, observed);
        mag.validate();
        for (int x = 0; x < 6; ++x)
            for (int y = x + 1; y < 6; ++y) {
                std::vector<int> rest;
                for (int v = 0; v < 6; ++v)
                    if (v != x && v != y) rest.push_back(v);
                for (int mask = 0; mask < 16; ++mask) {
                    std::vector<int> z;
                    for (int i = 0; i < 4; ++i)
                        if (mask & (1 << i)) z.push_back(rest[i]);
                    CHECK(is_m_separated(mag, x, y, z) == is_m_separated(dag, x, y, z));
                }
            }
    }
}

TEST_CASE("cpdag of chains and colliders") {
    MixedGraph chain = make_dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    MixedGraph cp = cpdag_of(chain);
    CHECK(cp.kind() == GraphKind::Cpdag);
    CHECK(cp.mark(0, 1) == Mark::Tail);
    CHECK(cp.mark(1, 0) == Mark::Tail);
    CHECK(cp.mark(1, 2) == Mark::Tail);
    CHECK(cp.mark(2, 1) == Mark::Tail);

    MixedGraph collider = make_dag({"A", "B", "C"}, {{"A", "B"}, {"C", "B"}});
    MixedGraph cp2 = cpdag_of(collider);
    CHECK(cp2.mark(0, 1) == Mark::Arrow);
    CHECK(cp2.mark(1, 0) == Mark::Tail);
    CHECK(cp2.mark(2, 1) == Mark::Arrow);

    MixedGraph pag(GraphKind::Pag, std::vector<GraphNode>{make_node("A")});
    CHECK_THROWS_AS(cpdag_of(pag), std::invalid_argument);
}

namespace {

// Compact d-separation for the exhaustive 5-node sweeps: parent bitmasks in,
// statement bitset out.
struct TinyDag {
    int n = 0;
    std::array<uint8_t, 5> pa{};
    uint16_t skeleton = 0;

    static TinyDag from(const MixedGraph& g) {
        TinyDag d;
        d.n = g.n();
        int pair_idx = 0;
        for (int a = 0; a < d.n; ++a)
            for (int b = a + 1; b < d.n; ++b, ++pair_idx)
                if (g.has_edge(a, b)) d.skeleton |= uint16_t(1) << pair_idx;
        for (int v = 0; v < d.n; ++v)
            for (int p : g.parents(v)) d.pa[v] |= uint8_t(1) << p;
        return d;
    }

    bool dsep(int x, int y, int zmask) const {
        uint8_t ch[5] = {0, 0, 0, 0, 0};
        for (int v = 0; v < n; ++v)
            for (int p = 0; p < n; ++p)
                if (pa[v] & (1 << p)) ch[p] |= uint8_t(1) << v;
        // ancestors of z
        uint8_t anz = static_cast<uint8_t>(zmask);
        for (int pass = 0; pass < n; ++pass)
            for (int v = 0; v < n; ++v)
                if (!(anz & (1 << v)) && (ch[v] & anz)) anz |= uint8_t(1) << v;

        bool seen[5][2] = {};
        std::vector<std::pair<int, int>> stack;
        auto push = [&](int v, int head) {
            if (v == y) return true;
            if (!seen[v][head]) {
                seen[v][head] = true;
                stack.emplace_back(v, head);
            }
            return false;
        };
        for (int c = 0; c < n; ++c)
            if ((ch[x] & (1 << c)) && push(c, 1)) return false;
        for (int p = 0; p < n; ++p)
            if ((pa[x] & (1 << p)) && push(p, 0)) return false;
        while (!stack.empty()) {
            const auto [v, head] = stack.back();
            stack.pop_back();
            const bool in_z = (zmask & (1 << v)) != 0;
            for (int c = 0; c < n; ++c)
                if ((ch[v] & (1 << c)) && !in_z && push(c, 1)) return false;
            for (int p = 0; p < n; ++p) {
                if (!(pa[v] & (1 << p))) continue;
                const bool open = head == 1 ? (anz & (1 << v)) != 0 : !in_z;
                if (open && push(p, 0)) return false;
            }
        }
        return true;
    }

    std::vector<bool> signature() const {
        std::vector<bool> sig;
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                int rest[5], m = 0;
                for (int v = 0; v < n; ++v)
                    if (v != x && v != y) rest[m++] = v;
                for (int mask = 0; mask < (1 << m); ++mask) {
                    int zmask = 0;
                    for (int i = 0; i < m; ++i)
                        if (mask & (1 << i)) zmask |= 1 << rest[i];
                    sig.push_back(dsep(x, y, zmask));
                }
            }
        return sig;
    }
};

MixedGraph class_intersection(const std::vector<MixedGraph>& members) {
    MixedGraph out(GraphKind::Cpdag, members.front().nodes());
    const int n = out.n();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!members.front().has_edge(a, b)) continue;
            bool all_ab = true, all_ba = true;
            for (const MixedGraph& g : members) {
                if (g.mark(a, b) != Mark::Arrow) all_ab = false;
                if (g.mark(b, a) != Mark::Arrow) all_ba = false;
            }
            if (all_ab)
                out.add_edge(a, b, Mark::Tail, Mark::Arrow);
            else if (all_ba)
                out.add_edge(a, b, Mark::Arrow, Mark::Tail);
            else
                out.add_edge(a, b, Mark::Tail, Mark::Tail);
        }
    return out;
}

} // namespace

TEST_CASE("cpdag equals the markov equivalence class intersection, 4 nodes exhaustive") {
    const auto dags = T::enumerate_dags(4);
    std::vector<TinyDag> tiny;
    std::vector<std::vector<bool>> sigs;
    for (const auto& g : dags) {
        tiny.push_back(TinyDag::from(g));
        sigs.push_back(tiny.back().signature());
    }
    for (size_t i = 0; i < dags.size(); ++i) {
        std::vector<MixedGraph> members;
        for (size_t j = 0; j < dags.size(); ++j)
            if (tiny[j].skeleton == tiny[i].skeleton && sigs[j] == sigs[i])
                members.push_back(dags[j]);
        CHECK(T::same_graph(cpdag_of(dags[i]), class_intersection(members)));
    }
}

TEST_CASE("cpdag equals the class intersection on sampled 5-node dags") {
    const auto dags = T::enumerate_dags(5);
    std::vector<TinyDag> tiny;
    tiny.reserve(dags.size());
    for (const auto& g : dags) tiny.push_back(TinyDag::from(g));

    Rng rng(2024007);
    for (int rep = 0; rep < 20; ++rep) {
        const size_t pick = rng.uniform_int(dags.size());
        const auto want_sig = tiny[pick].signature();
        std::vector<MixedGraph> members;
        for (size_t j = 0; j < dags.size(); ++j)
            if (tiny[j].skeleton == tiny[pick].skeleton && tiny[j].signature() == want_sig)
                members.push_back(dags[j]);
        REQUIRE(!members.empty());
        CHECK(T::same_graph(cpdag_of(dags[pick]), class_intersection(members)));
    }
}

TEST_CASE("cpdag invariant under covered edge reversal") {
    Rng rng(2024008);
    int reversals = 0;
    for (int rep = 0; rep < 40; ++rep) {
        MixedGraph g = T::random_dag(6, 0.35, rng);
        auto flipped = T::random_covered_reversal(g, rng);
        if (!flipped) continue;
        ++reversals;
        CHECK(T::same_graph(cpdag_of(g), cpdag_of(*flipped)));
    }
    CHECK(reversals > 10);
}

TEST_CASE("meek rules skip knowledge-forbidden orientations") {
    MixedGraph g(GraphKind::Cpdag,
                 std::vector<GraphNode>{make_node("A"), make_node("B"), make_node("C")});
    g.add_edge(0, 1, Mark::Tail, Mark::Arrow); // A -> B
    g.add_edge(1, 2, Mark::Tail, Mark::Tail);  // B - C

    MixedGraph plain = g;
    apply_meek_rules(plain);
    CHECK(plain.mark(1, 2) == Mark::Arrow); // R1

    Knowledge kn;
    kn.forbidden.emplace_back("B", "C");
    KnowledgeIndex idx(kn, {"A", "B", "C"});
    MixedGraph constrained = g;
    apply_meek_rules(constrained, &idx);
    CHECK(constrained.mark(1, 2) == Mark::Tail);
    CHECK(constrained.mark(2, 1) == Mark::Tail);
}

TEST_CASE("path queries on hand graphs") {
    MixedGraph chain = make_dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    auto p = directed_path(chain, 0, 2);
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{0, 1, 2});
    CHECK_FALSE(directed_path(chain, 2, 0).has_value());

    MixedGraph bi(GraphKind::Mag, std::vector<GraphNode>{make_node("A"), make_node("B")});
    bi.add_edge(0, 1, Mark::Arrow, Mark::Arrow);
    CHECK_FALSE(directed_path(bi, 0, 1).has_value());
    CHECK(any_path(bi, 0, 1).has_value());

    MixedGraph circ(GraphKind::Pag, std::vector<GraphNode>{make_node("A"), make_node("B")});
    circ.add_edge(0, 1, Mark::Circle, Mark::Arrow); // A o-> B
    auto pd = potentially_directed_path(circ, 0, 1);
    REQUIRE(pd.has_value());
    CHECK(*pd == std::vector<int>{0, 1});

    MixedGraph rev(GraphKind::Pag, std::vector<GraphNode>{make_node("A"), make_node("B")});
    rev.add_edge(0, 1, Mark::Arrow, Mark::Circle); // A <-o B
    CHECK_FALSE(potentially_directed_path(rev, 0, 1).has_value());

    MixedGraph split = make_dag({"A", "B"}, {});
    CHECK_FALSE(any_path(split, 0, 1).has_value());
    CHECK_THROWS_AS(any_path(split, 0, 0), std::invalid_argument);

    CHECK_FALSE(edge_between(chain, 0, 2).has_value());
    auto e = edge_between(chain, 0, 1);
    REQUIRE(e.has_value());
    CHECK(e->mark_b == Mark::Arrow);
}

TEST_CASE("path queries match exhaustive enumeration on random graphs") {
    Rng rng(2024009);
    for (int rep = 0; rep < 30; ++rep) {
        MixedGraph g = T::random_marked_graph(7, 0.3, rng);
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b) {
                if (a == b) continue;
                for (PathKind kind :
                     {PathKind::Directed, PathKind::PotentiallyDirected, PathKind::Any}) {
                    const auto got = find_path(g, a, b, kind);
                    const auto want = T::oracle_best_path(g, a, b, kind);
                    CHECK(got.has_value() == want.has_value());
                    if (got && want) CHECK(*got == *want);
                }
            }
    }
}

TEST_CASE("path subgraph keeps the path edges") {
    MixedGraph chain = make_dag({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "D"}});
    auto p = directed_path(chain, 0, 3);
    REQUIRE(p.has_value());
    MixedGraph sub = path_subgraph(chain, *p);
    CHECK(sub.n() == 4);
    CHECK(sub.edge_count() == 3);
    CHECK(sub.mark(0, 1) == Mark::Arrow);
    CHECK(sub.node(0).id == "A");
}

TEST_CASE("validate rejects kind violations") {
    MixedGraph cyc = make_dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    cyc.add_edge(2, 0, Mark::Tail, Mark::Arrow);
    CHECK_THROWS_AS(cyc.validate(), std::invalid_argument);

    MixedGraph circ(GraphKind::Cpdag, std::vector<GraphNode>{make_node("A"), make_node("B")});
    circ.add_edge(0, 1, Mark::Circle, Mark::Arrow);
    CHECK_THROWS_AS(circ.validate(), std::invalid_argument);

    MixedGraph mag(GraphKind::Mag, std::vector<GraphNode>{make_node("A"), make_node("B"),
                                                          make_node("C")});
    mag.add_edge(0, 1, Mark::Arrow, Mark::Arrow); // A <-> B
    mag.add_edge(0, 2, Mark::Tail, Mark::Arrow);  // A -> C
    mag.add_edge(2, 1, Mark::Tail, Mark::Arrow);  // C -> B: almost-directed cycle
    CHECK_THROWS_AS(mag.validate(), std::invalid_argument);

    MixedGraph ok = make_dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("topological order") {
    MixedGraph g = make_dag({"C", "A", "B"}, {{"A", "B"}, {"B", "C"}});
    const auto order = topological_order(g);
    std::vector<int> pos(3);
    for (int i = 0; i < 3; ++i) pos[order[i]] = i;
    CHECK(pos[g.index_of("A")] < pos[g.index_of("B")]);
    CHECK(pos[g.index_of("B")] < pos[g.index_of("C")]);

    MixedGraph cyc = make_dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
    CHECK_THROWS_AS(topological_order(cyc), std::invalid_argument);
}

TEST_CASE("graph json round trip") {
    Rng rng(2024010);
    MixedGraph g = T::random_marked_graph(6, 0.4, rng);
    MixedGraph back = graph_from_json(graph_to_json(g));
    CHECK(T::same_graph(g, back));
    CHECK(back.kind() == GraphKind::Pag);

    MixedGraph lagged(GraphKind::Dag,
                      std::vector<GraphNode>{make_lag_node("V1", 0), make_lag_node("V1", 1)});
    lagged.add_edge(1, 0, Mark::Tail, Mark::Arrow);
    MixedGraph back2 = graph_from_json(graph_to_json(lagged));
    CHECK(back2.node(0).id == "V1:0");
    CHECK(back2.node(0).variable == "V1");
    CHECK(back2.node(0).lag == 0);
    CHECK(back2.node(1).lag == 1);
    CHECK(back2.mark(1, 0) == Mark::Arrow);
}

TEST_CASE("knowledge index resolves tiers and explicit pairs") {
    Knowledge kn;
    kn.tiers = {{"X:1", "Y:1"}, {"X:0", "Y:0"}};
    kn.forbidden.emplace_back("X:1", "Y:1");
    kn.required.emplace_back("Y:1", "Y:0");
    const std::vector<std::string> ids{"X:0", "Y:0", "X:1", "Y:1"};
    KnowledgeIndex idx(kn, ids);

    // lag-0 nodes are in the newer tier: edges into the older tier are banned
    CHECK(idx.forbidden(0, 2)); // X:0 -> X:1
    CHECK_FALSE(idx.forbidden(2, 0));
    CHECK(idx.forbidden(2, 3)); // explicit
    CHECK(idx.required(3, 1));
    CHECK(idx.forbidden(1, 3)); // reverse of required
    CHECK(idx.tier_of(0) == 1);
    CHECK(idx.tier_of(2) == 0);

    Knowledge overlap;
    overlap.tiers = {{"A"}, {"A"}};
    CHECK_THROWS_AS(KnowledgeIndex(overlap, {"A"}), std::invalid_argument);

    Knowledge clash;
    clash.forbidden.emplace_back("A", "B");
    clash.required.emplace_back("A", "B");
    CHECK_THROWS_AS(KnowledgeIndex(clash, {"A", "B"}), std::invalid_argument);

    Knowledge twoway;
    twoway.required.emplace_back("A", "B");
    twoway.required.emplace_back("B", "A");
    CHECK_THROWS_AS(KnowledgeIndex(twoway, {"A", "B"}), std::invalid_argument);

    KnowledgeIndex empty_idx;
    CHECK(empty_idx.empty());
    CHECK_FALSE(empty_idx.forbidden(0, 1));
}

TEST_CASE("knowledge json round trip") {
    Knowledge kn;
    kn.tiers = {{"A", "B"}, {"C"}};
    kn.forbidden.emplace_back("A", "C");
    kn.required.emplace_back("B", "C");
    Knowledge back = knowledge_from_json(knowledge_to_json(kn));
    CHECK(back.tiers == kn.tiers);
    CHECK(back.forbidden == kn.forbidden);
    CHECK(back.required == kn.required);
}

} // TEST_SUITE("graph")
