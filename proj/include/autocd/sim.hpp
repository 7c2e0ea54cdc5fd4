#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "autocd/crv.hpp"
#include "autocd/dataset.hpp"
#include "autocd/graph.hpp"
#include "autocd/rng.hpp"

namespace autocd {

struct SimSpec {
    int n_vars = 0;
    int max_lag = 2;
    double avg_degree_per_lag = 2.0; // mean template edges per variable per lag
    int max_degree = 5;
    double autocorr_lo = 0.2;
    double autocorr_hi = 0.9;
    double coef_lo = 0.1;
    double coef_hi = 0.5;
    int n_samples = 0;
    int burn_in = 200;
    uint64_t seed = 0;
};

nlohmann::json sim_spec_to_json(const SimSpec& spec);
SimSpec sim_spec_from_json(const nlohmann::json& j);

// A time-lagged linear SEM. The DAG lives over (variable, lag) nodes laid
// out lag-major (node index = lag * n_vars + variable), with every template
// edge repeated at each feasible shift so the graph is the exact model of
// the lag-embedded dataset. Coefficients are keyed by (parent, child) node
// index.
struct GroundTruth {
    MixedGraph lagged_dag;
    std::map<std::pair<int, int>, double> coefficients;
    std::string target; // id of a lag-0 node
};

nlohmann::json ground_truth_to_json(const GroundTruth& gt);
GroundTruth ground_truth_from_json(const nlohmann::json& j);

// Random stationary process: every variable gets an autocorrelation edge
// X_{t-1} -> X_t with coefficient in [autocorr_lo, autocorr_hi]; cross
// edges are Bernoulli-sampled per lag to hit avg_degree_per_lag, subject to
// max_degree (in-degree of a lag-0 node, out-degree of a lagged node);
// cross coefficients draw magnitude from [coef_lo, coef_hi] with random
// sign. Draws whose companion matrix has spectral radius >= 0.999 are
// rejected; after 20 rejections the constraints are considered infeasible.
GroundTruth random_lagged_dag(const SimSpec& spec);

// Iterates the SEM with unit Gaussian noise and drops the first burn_in
// rows. Refuses ground truths with spectral radius >= 1.
Dataset simulate_ts(const GroundTruth& gt, int n_samples, int burn_in = 200, uint64_t seed = 0);

// Cross-sectional view of a time series: row t holds (V, lag) = V at time
// t - lag for lag 0..max_lag, t = max_lag..n-1. Columns are named
// "VAR:LAG", laid out lag-major, and carry (variable, lag) metadata.
Dataset lag_embed(const Dataset& ts, int max_lag);

// Semi-parametric generator fitted per node: least squares on the graph
// parents, noise drawn uniformly from the stored fit residuals.
class Resimulator {
public:
    Dataset sample(int n, uint64_t seed) const;

    const std::vector<double>& coefficients(int node) const { return beta_[node]; }
    const std::vector<double>& residuals(int node) const { return residuals_[node]; }

private:
    friend Resimulator resimulate_fit(const Dataset& d, const MixedGraph& g);
    std::vector<std::string> names_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<double>> beta_; // intercept, then one per parent
    std::vector<std::vector<double>> residuals_;
    std::vector<int> order_;
};

Resimulator resimulate_fit(const Dataset& d, const MixedGraph& g);

// Structural Hamming distance over unordered pairs: one step per adjacency
// difference, one per differing endpoint mark on shared edges.
int shd(const MixedGraph& a, const MixedGraph& b);

struct PrResult {
    double precision = 1.0;
    double recall = 1.0;
    // an empty estimate predicts nothing, so its precision is 1 by
    // convention and flagged here
    bool precision_undefined = false;
};

PrResult adjacency_pr(const MixedGraph& est, const MixedGraph& truth);
PrResult set_pr(const std::vector<int>& est, const std::vector<int>& truth);

// Midrank AUROC of consistency frequencies against edge presence in the
// true graph; empty when only one label occurs.
std::optional<double> edge_confidence_auc(const std::vector<EdgeConfidence>& confidences,
                                          const MixedGraph& true_graph);

// Marginal of the true lagged DAG over the observed nodes.
MixedGraph true_marginal(const GroundTruth& gt, const std::vector<int>& observed);

} // namespace autocd
