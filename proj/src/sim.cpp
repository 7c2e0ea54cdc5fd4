#include "autocd/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "autocd/graph_io.hpp"
#include "autocd/metrics.hpp"

namespace autocd {

namespace {

// AR form of a lagged DAG: per variable, the (parent variable, lag,
// coefficient) triples feeding its lag-0 node.
struct LagStructure {
    int n_vars = 0;
    int max_parent_lag = 0;
    std::vector<std::string> variables;
    std::vector<std::vector<std::tuple<int, int, double>>> parents;
};

LagStructure lag_structure(const GroundTruth& gt) {
    const MixedGraph& g = gt.lagged_dag;
    LagStructure s;
    std::unordered_map<std::string, int> var_pos;
    std::vector<int> lag0;
    for (int i = 0; i < g.n(); ++i) {
        const GraphNode& nd = g.node(i);
        if (nd.lag < 0 || nd.variable.empty())
            throw std::invalid_argument("simulate_ts: node " + nd.id +
                                        " lacks (variable, lag) metadata");
        if (nd.lag > 0) continue;
        if (!var_pos.emplace(nd.variable, static_cast<int>(lag0.size())).second)
            throw std::invalid_argument("simulate_ts: variable " + nd.variable +
                                        " appears twice at lag 0");
        s.variables.push_back(nd.variable);
        lag0.push_back(i);
    }
    if (lag0.empty()) throw std::invalid_argument("simulate_ts: graph has no lag-0 nodes");
    s.n_vars = static_cast<int>(lag0.size());
    s.parents.resize(s.n_vars);
    for (int w = 0; w < s.n_vars; ++w) {
        for (int p : g.parents(lag0[w])) {
            const GraphNode& pn = g.node(p);
            if (pn.lag < 1)
                throw std::invalid_argument("simulate_ts: lag-0 node " + g.node(lag0[w]).id +
                                            " has a contemporaneous parent");
            auto it = var_pos.find(pn.variable);
            if (it == var_pos.end())
                throw std::invalid_argument("simulate_ts: parent variable " + pn.variable +
                                            " has no lag-0 node");
            auto coef = gt.coefficients.find({p, lag0[w]});
            if (coef == gt.coefficients.end())
                throw std::invalid_argument("simulate_ts: missing coefficient for " + pn.id +
                                            " -> " + g.node(lag0[w]).id);
            s.parents[w].emplace_back(it->second, pn.lag, coef->second);
            s.max_parent_lag = std::max(s.max_parent_lag, pn.lag);
        }
    }
    return s;
}

// Largest eigenvalue modulus of the companion matrix of the VAR process.
double spectral_radius(const LagStructure& s) {
    const int m = s.n_vars;
    const int l_max = s.max_parent_lag;
    if (l_max == 0) return 0.0;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m * l_max, m * l_max);
    for (int w = 0; w < m; ++w)
        for (const auto& [v, l, c] : s.parents[w]) companion(w, (l - 1) * m + v) += c;
    if (l_max > 1)
        companion.block(m, 0, m * (l_max - 1), m * (l_max - 1)) =
            Eigen::MatrixXd::Identity(m * (l_max - 1), m * (l_max - 1));
    return companion.eigenvalues().cwiseAbs().maxCoeff();
}

void validate_spec(const SimSpec& spec) {
    if (spec.n_vars < 1) throw std::invalid_argument("random_lagged_dag: n_vars must be positive");
    if (spec.max_lag < 1)
        throw std::invalid_argument("random_lagged_dag: max_lag must be at least 1");
    if (spec.max_degree < 1)
        throw std::invalid_argument("random_lagged_dag: max_degree must be at least 1");
    if (!(spec.autocorr_lo > 0.0 && spec.autocorr_lo < spec.autocorr_hi && spec.autocorr_hi < 1.0))
        throw std::invalid_argument("random_lagged_dag: autocorr_range must satisfy 0 < lo < hi < 1");
    if (!(spec.coef_lo > 0.0 && spec.coef_lo < spec.coef_hi && spec.coef_hi < 1.0))
        throw std::invalid_argument("random_lagged_dag: coef_range must satisfy 0 < lo < hi < 1");
    if (spec.avg_degree_per_lag < 1.0)
        throw std::invalid_argument(
            "random_lagged_dag: avg_degree_per_lag must be at least 1 (the autocorrelation edge "
            "is mandatory)");
    if (spec.avg_degree_per_lag > spec.max_degree)
        throw std::invalid_argument("random_lagged_dag: avg_degree_per_lag exceeds max_degree");
    if (spec.n_vars > 1 && spec.avg_degree_per_lag > spec.n_vars - 1)
        throw std::invalid_argument(
            "random_lagged_dag: avg_degree_per_lag is not reachable with n_vars variables");
}

} // namespace

GroundTruth random_lagged_dag(const SimSpec& spec) {
    validate_spec(spec);
    Rng rng(spec.seed);
    const int n = spec.n_vars;
    const int max_lag = spec.max_lag;
    const double avg = spec.avg_degree_per_lag;

    for (int attempt = 0; attempt < 1000; ++attempt) {
        // Template edges (v, l, w): variable v at lag l into variable w at
        // lag 0. The degree target and cap apply per lag tier to the
        // in-edges of lag-0 nodes; the mandatory self edge counts at lag 1.
        std::vector<std::tuple<int, int, int>> templates;
        std::vector<std::vector<int>> in_count(n, std::vector<int>(max_lag + 1, 0));
        for (int v = 0; v < n; ++v) {
            templates.emplace_back(v, 1, v);
            in_count[v][1] = 1;
        }
        if (n > 1) {
            std::vector<std::tuple<int, int, int>> candidates;
            for (int l = 1; l <= max_lag; ++l)
                for (int v = 0; v < n; ++v)
                    for (int w = 0; w < n; ++w)
                        if (v != w) candidates.emplace_back(v, l, w);
            rng.shuffle(candidates);
            for (const auto& [v, l, w] : candidates) {
                const double p = (l == 1 ? avg - 1.0 : avg) / (n - 1);
                if (rng.uniform01() >= p) continue;
                if (in_count[w][l] >= spec.max_degree) continue;
                templates.emplace_back(v, l, w);
                ++in_count[w][l];
            }
        }
        std::vector<double> coef(templates.size());
        for (std::size_t i = 0; i < templates.size(); ++i) {
            const auto& [v, l, w] = templates[i];
            if (v == w) {
                coef[i] = rng.uniform(spec.autocorr_lo, spec.autocorr_hi);
            } else {
                const double c = rng.uniform(spec.coef_lo, spec.coef_hi);
                coef[i] = rng.uniform01() < 0.5 ? -c : c;
            }
        }

        LagStructure s;
        s.n_vars = n;
        s.max_parent_lag = max_lag;
        s.parents.resize(n);
        for (std::size_t i = 0; i < templates.size(); ++i) {
            const auto& [v, l, w] = templates[i];
            s.parents[w].emplace_back(v, l, coef[i]);
        }
        if (spectral_radius(s) >= 0.999) continue;

        std::vector<GraphNode> nodes;
        for (int lag = 0; lag <= max_lag; ++lag)
            for (int v = 0; v < n; ++v) nodes.push_back(make_lag_node("X" + std::to_string(v), lag));
        GroundTruth gt;
        gt.lagged_dag = MixedGraph(GraphKind::Dag, std::move(nodes));
        // Each template repeats at every shift that still fits the window,
        // so the graph is exact for the lag-embedded dataset.
        for (std::size_t i = 0; i < templates.size(); ++i) {
            const auto& [v, l, w] = templates[i];
            for (int j = 0; j + l <= max_lag; ++j) {
                const int from = (l + j) * n + v;
                const int to = j * n + w;
                gt.lagged_dag.add_edge(from, to, Mark::Tail, Mark::Arrow);
                gt.coefficients[{from, to}] = coef[i];
            }
        }
        gt.target = gt.lagged_dag.node(rng.uniform_int(n)).id;
        return gt;
    }
    throw std::runtime_error("random_lagged_dag: no stationary coefficient draw in 1000 attempts");
}

Dataset simulate_ts(const GroundTruth& gt, int n_samples, int burn_in, uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("simulate_ts: n_samples must be positive");
    if (burn_in < 0) throw std::invalid_argument("simulate_ts: burn_in cannot be negative");
    const LagStructure s = lag_structure(gt);
    if (spectral_radius(s) >= 1.0)
        throw std::runtime_error("simulate_ts: process is not stationary (spectral radius >= 1)");

    Rng rng(seed);
    const int total = burn_in + n_samples;
    std::vector<std::vector<double>> x(total, std::vector<double>(s.n_vars, 0.0));
    for (int t = 0; t < total; ++t) {
        for (int w = 0; w < s.n_vars; ++w) {
            double val = rng.normal();
            for (const auto& [v, l, c] : s.parents[w])
                if (t - l >= 0) val += c * x[t - l][v];
            x[t][w] = val;
        }
    }
    std::vector<Column> cols;
    cols.reserve(s.n_vars);
    for (int w = 0; w < s.n_vars; ++w) {
        std::vector<double> values(n_samples);
        for (int t = 0; t < n_samples; ++t) values[t] = x[burn_in + t][w];
        cols.push_back(continuous_column(s.variables[w], std::move(values)));
    }
    return Dataset(std::move(cols));
}

Dataset lag_embed(const Dataset& ts, int max_lag) {
    if (max_lag < 0) throw std::invalid_argument("lag_embed: max_lag cannot be negative");
    if (ts.n_rows() <= max_lag)
        throw std::invalid_argument("lag_embed: need more than max_lag rows");
    const int rows = ts.n_rows() - max_lag;
    std::vector<Column> cols;
    cols.reserve(static_cast<std::size_t>(ts.n_cols()) * (max_lag + 1));
    for (int lag = 0; lag <= max_lag; ++lag) {
        for (const Column& c : ts.columns()) {
            Column out = c;
            out.name = c.name + ":" + std::to_string(lag);
            out.variable = c.name;
            out.lag = lag;
            // row r is absolute time r + max_lag, so lag l starts l rows back
            const int offset = max_lag - lag;
            if (c.type == ColumnType::Continuous)
                out.values.assign(c.values.begin() + offset, c.values.begin() + offset + rows);
            else
                out.codes.assign(c.codes.begin() + offset, c.codes.begin() + offset + rows);
            cols.push_back(std::move(out));
        }
    }
    return Dataset(std::move(cols));
}

Resimulator resimulate_fit(const Dataset& d, const MixedGraph& g) {
    if (g.kind() != GraphKind::Dag)
        throw std::invalid_argument("resimulate_fit: graph must be a dag");
    if (g.n() != d.n_cols())
        throw std::invalid_argument("resimulate_fit: graph and dataset disagree on variables");
    if (d.n_rows() < 2) throw std::invalid_argument("resimulate_fit: need at least 2 rows");
    for (int i = 0; i < g.n(); ++i) {
        if (g.node(i).id != d.col(i).name)
            throw std::invalid_argument("resimulate_fit: node ids must match column names");
        if (d.col(i).type != ColumnType::Continuous)
            throw std::invalid_argument("resimulate_fit: categorical columns are not supported");
    }

    Resimulator r;
    r.order_ = topological_order(g);
    const int n = d.n_rows();
    for (int node = 0; node < g.n(); ++node) {
        const std::vector<int> ps = g.parents(node);
        Eigen::MatrixXd x(n, ps.size() + 1);
        x.col(0).setOnes();
        for (std::size_t j = 0; j < ps.size(); ++j)
            x.col(static_cast<int>(j) + 1) =
                Eigen::Map<const Eigen::VectorXd>(d.col(ps[j]).values.data(), n);
        const Eigen::Map<const Eigen::VectorXd> y(d.col(node).values.data(), n);
        const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
        const Eigen::VectorXd resid = y - x * beta;
        r.names_.push_back(d.col(node).name);
        r.parents_.push_back(ps);
        r.beta_.emplace_back(beta.data(), beta.data() + beta.size());
        r.residuals_.emplace_back(resid.data(), resid.data() + resid.size());
    }
    return r;
}

Dataset Resimulator::sample(int n, uint64_t seed) const {
    if (n < 1) throw std::invalid_argument("Resimulator::sample: n must be positive");
    Rng rng(seed);
    const int k = static_cast<int>(names_.size());
    std::vector<std::vector<double>> vals(k, std::vector<double>(n, 0.0));
    for (int node : order_) {
        const int n_resid = static_cast<int>(residuals_[node].size());
        for (int r = 0; r < n; ++r) {
            double v = beta_[node][0];
            for (std::size_t j = 0; j < parents_[node].size(); ++j)
                v += beta_[node][j + 1] * vals[parents_[node][j]][r];
            vals[node][r] = v + residuals_[node][rng.uniform_int(n_resid)];
        }
    }
    std::vector<Column> cols;
    cols.reserve(k);
    for (int node = 0; node < k; ++node)
        cols.push_back(continuous_column(names_[node], std::move(vals[node])));
    return Dataset(std::move(cols));
}

int shd(const MixedGraph& a, const MixedGraph& b) {
    if (a.node_ids() != b.node_ids())
        throw std::invalid_argument("shd: graphs must share the same nodes");
    int dist = 0;
    for (int i = 0; i < a.n(); ++i) {
        for (int j = i + 1; j < a.n(); ++j) {
            const bool in_a = a.has_edge(i, j);
            const bool in_b = b.has_edge(i, j);
            if (in_a != in_b) {
                ++dist;
                continue;
            }
            if (!in_a) continue;
            if (a.mark(i, j) != b.mark(i, j)) ++dist;
            if (a.mark(j, i) != b.mark(j, i)) ++dist;
        }
    }
    return dist;
}

namespace {

PrResult pr_from_counts(int tp, int n_est, int n_true) {
    PrResult r;
    r.precision_undefined = n_est == 0;
    r.precision = n_est == 0 ? 1.0 : static_cast<double>(tp) / n_est;
    r.recall = n_true == 0 ? 1.0 : static_cast<double>(tp) / n_true;
    return r;
}

} // namespace

PrResult adjacency_pr(const MixedGraph& est, const MixedGraph& truth) {
    if (est.node_ids() != truth.node_ids())
        throw std::invalid_argument("adjacency_pr: graphs must share the same nodes");
    int tp = 0, n_est = 0, n_true = 0;
    for (int i = 0; i < est.n(); ++i) {
        for (int j = i + 1; j < est.n(); ++j) {
            const bool e = est.has_edge(i, j);
            const bool t = truth.has_edge(i, j);
            n_est += e;
            n_true += t;
            tp += e && t;
        }
    }
    return pr_from_counts(tp, n_est, n_true);
}

PrResult set_pr(const std::vector<int>& est, const std::vector<int>& truth) {
    const std::set<int> e(est.begin(), est.end());
    const std::set<int> t(truth.begin(), truth.end());
    int tp = 0;
    for (int v : e) tp += t.count(v);
    return pr_from_counts(tp, static_cast<int>(e.size()), static_cast<int>(t.size()));
}

std::optional<double> edge_confidence_auc(const std::vector<EdgeConfidence>& confidences,
                                          const MixedGraph& true_graph) {
    std::vector<int> labels;
    std::vector<double> scores;
    for (const EdgeConfidence& ec : confidences) {
        if (ec.edge.a < 0 || ec.edge.a >= true_graph.n() || ec.edge.b < 0 ||
            ec.edge.b >= true_graph.n())
            throw std::invalid_argument("edge_confidence_auc: edge endpoint outside true graph");
        labels.push_back(true_graph.has_edge(ec.edge.a, ec.edge.b) ? 1 : 0);
        scores.push_back(ec.consistency_freq);
    }
    if (labels.empty()) return std::nullopt;
    if (std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels[0]; }))
        return std::nullopt;
    return auroc_score(labels, scores);
}

MixedGraph true_marginal(const GroundTruth& gt, const std::vector<int>& observed) {
    return latent_projection(gt.lagged_dag, observed);
}

nlohmann::json sim_spec_to_json(const SimSpec& spec) {
    return nlohmann::json{
        {"n_vars", spec.n_vars},
        {"max_lag", spec.max_lag},
        {"avg_degree_per_lag", spec.avg_degree_per_lag},
        {"max_degree", spec.max_degree},
        {"autocorr_range", {spec.autocorr_lo, spec.autocorr_hi}},
        {"coef_range", {spec.coef_lo, spec.coef_hi}},
        {"n_samples", spec.n_samples},
        {"burn_in", spec.burn_in},
        {"seed", spec.seed},
    };
}

SimSpec sim_spec_from_json(const nlohmann::json& j) {
    SimSpec spec;
    spec.n_vars = j.at("n_vars").get<int>();
    spec.max_lag = j.value("max_lag", spec.max_lag);
    spec.avg_degree_per_lag = j.value("avg_degree_per_lag", spec.avg_degree_per_lag);
    spec.max_degree = j.value("max_degree", spec.max_degree);
    if (j.contains("autocorr_range")) {
        spec.autocorr_lo = j["autocorr_range"].at(0).get<double>();
        spec.autocorr_hi = j["autocorr_range"].at(1).get<double>();
    }
    if (j.contains("coef_range")) {
        spec.coef_lo = j["coef_range"].at(0).get<double>();
        spec.coef_hi = j["coef_range"].at(1).get<double>();
    }
    spec.n_samples = j.value("n_samples", spec.n_samples);
    spec.burn_in = j.value("burn_in", spec.burn_in);
    spec.seed = j.value("seed", spec.seed);
    return spec;
}

nlohmann::json ground_truth_to_json(const GroundTruth& gt) {
    nlohmann::json j = graph_to_json(gt.lagged_dag);
    nlohmann::json coefs = nlohmann::json::array();
    for (const auto& [edge, value] : gt.coefficients)
        coefs.push_back({{"from", gt.lagged_dag.node(edge.first).id},
                         {"to", gt.lagged_dag.node(edge.second).id},
                         {"value", value}});
    j["coefficients"] = std::move(coefs);
    j["target"] = gt.target;
    return j;
}

GroundTruth ground_truth_from_json(const nlohmann::json& j) {
    GroundTruth gt;
    gt.lagged_dag = graph_from_json(j);
    for (const auto& e : j.at("coefficients")) {
        const int from = gt.lagged_dag.index_of(e.at("from").get<std::string>());
        const int to = gt.lagged_dag.index_of(e.at("to").get<std::string>());
        gt.coefficients[{from, to}] = e.at("value").get<double>();
    }
    gt.target = j.value("target", std::string{});
    return gt;
}

} // namespace autocd
