#include "autocd/oct.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "autocd/metrics.hpp"
#include "autocd/rng.hpp"

namespace autocd {

namespace {

// Smaller forests than the feature-selection defaults: one forest per
// node x fold x config adds up quickly.
ForestSpec node_forest_spec(uint64_t seed, int node, int fold) {
    ForestSpec spec;
    spec.n_trees = 50;
    spec.min_leaf = 5;
    spec.seed = Rng::mix(seed ^ (static_cast<uint64_t>(node) * 8191 + fold + 1));
    return spec;
}

double node_score(const Dataset& train, const Dataset& test, int node,
                  const std::vector<int>& mb, const ForestSpec& spec) {
    if (mb.empty()) return 0.0;
    Forest model = Forest::train(train, node, mb, spec);
    Prediction p = model.predict(test);
    const Column& tc = test.col(node);
    if (tc.type == ColumnType::Continuous) return mutual_information_score(tc.values, p.values);
    return mutual_information_score(tc.codes, p.labels);
}

double mean_boundary_size(const MixedGraph& g) {
    double s = 0.0;
    for (int v = 0; v < g.n(); ++v) s += static_cast<double>(markov_boundary(g, v).size());
    return g.n() > 0 ? s / g.n() : 0.0;
}

} // namespace

ConfigPerformance config_performance(const Dataset& d, const ClConfig& cfg, const FoldPlan& folds,
                                     uint64_t seed) {
    const int n_nodes = d.n_cols();
    const int k = folds.k;
    if (k < 2) throw std::invalid_argument("config_performance: need at least 2 folds");

    ConfigPerformance out;
    out.scores.assign(n_nodes, std::vector<double>(k, 0.0));
    out.mb_sizes.assign(n_nodes, std::vector<double>(k, 0.0));
    out.fold_graphs.resize(k);
    out.fold_errors.assign(k, "");

    int failed = 0;
    for (int f = 0; f < k; ++f) {
        Dataset train = d.select_rows(folds.train_rows(f));
        Dataset test = d.select_rows(folds.test_rows(f));
        MixedGraph g;
        try {
            g = run_discovery(train, cfg);
        } catch (const std::exception& e) {
            out.fold_errors[f] = e.what();
            ++failed;
            continue;
        }
        out.fold_graphs[f] = g;
        for (int v = 0; v < n_nodes; ++v) {
            std::vector<int> mb = markov_boundary(g, v);
            out.mb_sizes[v][f] = static_cast<double>(mb.size());
            out.scores[v][f] = node_score(train, test, v, mb, node_forest_spec(seed, v, f));
        }
    }
    out.disqualified = 2 * failed > k;
    return out;
}

OctReport oct_select(const Dataset& d, const std::vector<ClConfig>& configs, int k, int b,
                     double alpha, uint64_t seed) {
    if (configs.empty()) throw std::invalid_argument("oct_select: no configs");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("oct_select: alpha out of (0,1)");
    const int nc = static_cast<int>(configs.size());
    const int n_nodes = d.n_cols();
    FoldPlan folds = make_folds(d.n_rows(), k, seed);

    OctReport rep;
    for (int c = 0; c < nc; ++c) {
        OctConfigSummary s;
        s.config = configs[c];
        s.perf = config_performance(d, configs[c], folds,
                                    Rng::substream(seed, "oct.forest." + std::to_string(c)));
        double score_sum = 0.0, size_sum = 0.0;
        int cells = 0;
        for (int f = 0; f < k; ++f) {
            if (!s.perf.fold_errors[f].empty()) continue;
            for (int v = 0; v < n_nodes; ++v) {
                score_sum += s.perf.scores[v][f];
                size_sum += s.perf.mb_sizes[v][f];
                ++cells;
            }
        }
        if (cells > 0) {
            s.mean_score = score_sum / cells;
            s.mean_mb_size = size_sum / cells;
        }
        rep.per_config.push_back(std::move(s));
    }

    int best = -1;
    for (int c = 0; c < nc; ++c) {
        if (rep.per_config[c].perf.disqualified) continue;
        if (best < 0 || rep.per_config[c].mean_score > rep.per_config[best].mean_score) best = c;
    }
    if (best < 0) {
        std::string diag = "oct_select: every config was disqualified;";
        for (int c = 0; c < nc; ++c) {
            diag += " [config " + std::to_string(c);
            for (const std::string& err : rep.per_config[c].perf.fold_errors)
                if (!err.empty()) {
                    diag += ": " + err;
                    break;
                }
            diag += "]";
        }
        throw std::runtime_error(diag);
    }
    rep.best_index = best;

    rep.indistinguishable.push_back({best, 1.0});
    for (int c = 0; c < nc; ++c) {
        if (c == best || rep.per_config[c].perf.disqualified) continue;
        std::vector<double> bs, cs;
        for (int f = 0; f < k; ++f) {
            if (!rep.per_config[best].perf.fold_errors[f].empty()) continue;
            if (!rep.per_config[c].perf.fold_errors[f].empty()) continue;
            for (int v = 0; v < n_nodes; ++v) {
                bs.push_back(rep.per_config[best].perf.scores[v][f]);
                cs.push_back(rep.per_config[c].perf.scores[v][f]);
            }
        }
        // no shared valid folds means no evidence of a difference
        PermutationResult pr{1.0, true};
        if (!bs.empty())
            pr = permutation_indistinguishable(bs, cs, b, alpha,
                                               Rng::substream(seed, "oct.perm." + std::to_string(c)));
        if (pr.indistinguishable) rep.indistinguishable.push_back({c, pr.p_value});
    }

    int winner = best;
    for (const auto& [c, p] : rep.indistinguishable) {
        const OctConfigSummary& cand = rep.per_config[c];
        const OctConfigSummary& cur = rep.per_config[winner];
        if (std::make_tuple(cand.mean_mb_size, -cand.mean_score, c) <
            std::make_tuple(cur.mean_mb_size, -cur.mean_score, winner))
            winner = c;
    }
    rep.winner_index = winner;
    rep.winner = configs[winner];
    rep.winner_graph = run_discovery(d, configs[winner]);
    rep.winner_graph_mb_size = mean_boundary_size(rep.winner_graph);
    return rep;
}

} // namespace autocd
