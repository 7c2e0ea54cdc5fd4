#include "autocd/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "autocd/afs.hpp"
#include "autocd/crv.hpp"
#include "autocd/metrics.hpp"
#include "autocd/oct.hpp"
#include "autocd/rng.hpp"
#include "autocd/sim.hpp"

namespace autocd {

std::vector<ClConfig> default_cl_grid(const Knowledge& knowledge) {
    std::vector<ClConfig> grid;
    for (ClAlgorithm alg : {ClAlgorithm::PcStable, ClAlgorithm::Fci}) {
        for (double alpha : {0.01, 0.05}) {
            ClConfig cfg;
            cfg.algorithm = alg;
            cfg.alpha = alpha;
            cfg.knowledge = knowledge;
            grid.push_back(std::move(cfg));
        }
    }
    return grid;
}

namespace {

uint64_t replicate_stream(uint64_t seed, int replicate, const std::string& stage) {
    return Rng::substream(seed, "bench." + std::to_string(replicate) + "." + stage);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::set<std::pair<std::string, std::string>> adjacency_names(const MixedGraph& g) {
    std::set<std::pair<std::string, std::string>> out;
    for (const Edge& e : g.edges()) {
        std::string a = g.node(e.a).id, b = g.node(e.b).id;
        if (b < a) std::swap(a, b);
        out.insert({a, b});
    }
    return out;
}

// Induced subgraph of g over the truth's node list, so estimate and truth
// share one node space for precision, recall, and SHD.
MixedGraph restrict_to(const MixedGraph& g, const MixedGraph& space) {
    MixedGraph out(g.kind(), space.nodes());
    for (const Edge& e : g.edges()) {
        const int a = out.find_index(g.node(e.a).id);
        const int b = out.find_index(g.node(e.b).id);
        if (a >= 0 && b >= 0) out.add_edge(a, b, e.mark_a, e.mark_b);
    }
    return out;
}

BenchRow run_replicate(const BenchSpec& spec, int r) {
    BenchRow row;
    row.replicate = r;

    SimSpec sim;
    sim.n_vars = spec.n_vars;
    sim.max_lag = spec.max_lag;
    sim.seed = replicate_stream(spec.seed, r, "dag");
    const GroundTruth gt = random_lagged_dag(sim);

    const Dataset train = lag_embed(
        simulate_ts(gt, spec.n_train + spec.max_lag, 200, replicate_stream(spec.seed, r, "train")),
        spec.max_lag);
    const Dataset holdout = lag_embed(
        simulate_ts(gt, spec.n_holdout + spec.max_lag, 200,
                    replicate_stream(spec.seed, r, "holdout")),
        spec.max_lag);

    const int target = train.index_of(gt.target);
    const std::vector<int> mb_true = markov_boundary(gt.lagged_dag, target);

    const AfsResult afs =
        run_afs(train, target, default_afs_grid(), &holdout, replicate_stream(spec.seed, r, "afs"));
    const PrResult mb_pr = set_pr(afs.mb_est, mb_true);
    row.mb_precision = mb_pr.precision;
    row.mb_recall = mb_pr.recall;

    // the data-generating equation of the target is the best linear model
    std::vector<double> pred(holdout.n_rows(), 0.0);
    for (int p : gt.lagged_dag.parents(target)) {
        const double c = gt.coefficients.at({p, target});
        const std::vector<double>& x = holdout.col(p).values;
        for (int i = 0; i < holdout.n_rows(); ++i) pred[i] += c * x[i];
    }
    row.r2_true = r2_score(holdout.col(target).values, pred);
    row.r2_est = afs.holdout_score.value_or(0.0);
    row.delta_r2 = row.r2_true - row.r2_est;

    // keep every selected variable at every lag, plus the target's
    std::set<std::string> variables = {train.col(target).variable};
    for (int f : afs.mb_est) variables.insert(train.col(f).variable);
    std::vector<int> keep;
    for (int i = 0; i < train.n_cols(); ++i)
        if (variables.count(train.col(i).variable)) keep.push_back(i);
    const Dataset d_cl = train.select_cols(keep);

    const std::vector<ClConfig> grid = default_cl_grid(tier_knowledge(d_cl));
    const OctReport oct =
        oct_select(d_cl, grid, 5, 1000, 0.05, replicate_stream(spec.seed, r, "oct"));
    row.winner_config = to_string(oct.winner.algorithm) + "@" + fmt(oct.winner.alpha);

    // graphs are judged against the marginal of the true graph over the
    // true Mb's variables (every lag of each), not the selected ones
    std::set<std::string> true_vars = {train.col(target).variable};
    for (int i : mb_true) true_vars.insert(gt.lagged_dag.node(i).variable);
    std::vector<int> observed;
    for (int i = 0; i < gt.lagged_dag.n(); ++i)
        if (true_vars.count(gt.lagged_dag.node(i).variable)) observed.push_back(i);
    const MixedGraph truth = true_marginal(gt, observed);

    const MixedGraph est = restrict_to(oct.winner_graph, truth);
    const PrResult adj = adjacency_pr(est, truth);
    row.adj_precision = adj.precision;
    row.adj_recall = adj.recall;

    row.shd_winner = shd(est, truth);
    std::vector<int> shd_by_config;
    for (const ClConfig& cfg : grid)
        shd_by_config.push_back(shd(restrict_to(run_discovery(d_cl, cfg), truth), truth));
    row.shd_best = *std::min_element(shd_by_config.begin(), shd_by_config.end());
    Rng pick(replicate_stream(spec.seed, r, "random"));
    row.shd_random = shd_by_config[pick.uniform_int(static_cast<int>(grid.size()))];

    const BootstrapResult boot = bootstrap_graphs(d_cl, oct.winner, spec.n_boot, spec.block_len,
                                                  replicate_stream(spec.seed, r, "boot"));
    if (!boot.graphs.empty()) {
        // ranking labels cover every winner edge, including those outside the
        // truth's node space: such edges are simply absent from the truth
        const auto e_true = adjacency_names(truth);
        std::vector<int> labels;
        std::vector<double> scores;
        for (const EdgeConfidence& ec : edge_confidences(oct.winner_graph, boot.graphs)) {
            std::string a = oct.winner_graph.node(ec.edge.a).id;
            std::string b = oct.winner_graph.node(ec.edge.b).id;
            if (b < a) std::swap(a, b);
            labels.push_back(e_true.count({a, b}) ? 1 : 0);
            scores.push_back(ec.consistency_freq);
        }
        const bool one_class =
            labels.empty() || std::all_of(labels.begin(), labels.end(),
                                          [&](int l) { return l == labels.front(); });
        if (!one_class) row.auc = auroc_score(labels, scores);
    }
    return row;
}

} // namespace

BenchResult run_bench(const BenchSpec& spec, std::ostream* progress) {
    if (spec.n_replicates < 1)
        throw std::invalid_argument("run_bench: n_replicates must be positive");
    if (spec.n_train < 1 || spec.n_holdout < 1)
        throw std::invalid_argument("run_bench: sample sizes must be positive");
    if (spec.n_boot < 0) throw std::invalid_argument("run_bench: n_boot cannot be negative");

    BenchResult result;
    double auc_sum = 0.0;
    int auc_count = 0;
    for (int r = 0; r < spec.n_replicates; ++r) {
        BenchRow row = run_replicate(spec, r);
        result.mean_mb_precision += row.mb_precision;
        result.mean_mb_recall += row.mb_recall;
        result.mean_delta_r2 += row.delta_r2;
        result.mean_adj_precision += row.adj_precision;
        result.mean_adj_recall += row.adj_recall;
        result.mean_shd_winner_gap += row.shd_winner - row.shd_best;
        result.mean_shd_random_gap += row.shd_random - row.shd_best;
        if (row.auc) {
            auc_sum += *row.auc;
            ++auc_count;
        }
        if (progress) {
            *progress << "replicate " << r << ": mb_p=" << fmt(row.mb_precision)
                      << " mb_r=" << fmt(row.mb_recall) << " dR2=" << fmt(row.delta_r2)
                      << " adj_p=" << fmt(row.adj_precision) << " adj_r=" << fmt(row.adj_recall)
                      << " shd=" << row.shd_winner << "/" << row.shd_best << "/" << row.shd_random
                      << " auc=" << (row.auc ? fmt(*row.auc) : "-") << " winner="
                      << row.winner_config << "\n";
            progress->flush();
        }
        result.rows.push_back(std::move(row));
    }
    const double n = spec.n_replicates;
    result.mean_mb_precision /= n;
    result.mean_mb_recall /= n;
    result.mean_delta_r2 /= n;
    result.mean_adj_precision /= n;
    result.mean_adj_recall /= n;
    result.mean_shd_winner_gap /= n;
    result.mean_shd_random_gap /= n;
    if (auc_count > 0) result.mean_auc = auc_sum / auc_count;
    return result;
}

std::string bench_csv(const BenchResult& result) {
    std::string out =
        "replicate,mb_precision,mb_recall,r2_true,r2_est,delta_r2,adj_precision,adj_recall,"
        "shd_winner,shd_best,shd_random,auc,winner_config\n";
    for (const BenchRow& row : result.rows) {
        out += std::to_string(row.replicate) + "," + fmt(row.mb_precision) + "," +
               fmt(row.mb_recall) + "," + fmt(row.r2_true) + "," + fmt(row.r2_est) + "," +
               fmt(row.delta_r2) + "," + fmt(row.adj_precision) + "," + fmt(row.adj_recall) + "," +
               std::to_string(row.shd_winner) + "," + std::to_string(row.shd_best) + "," +
               std::to_string(row.shd_random) + "," + (row.auc ? fmt(*row.auc) : "") + "," +
               row.winner_config + "\n";
    }
    return out;
}

} // namespace autocd
