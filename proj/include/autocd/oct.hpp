#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autocd/dataset.hpp"
#include "autocd/discovery.hpp"
#include "autocd/forest.hpp"
#include "autocd/graph.hpp"

namespace autocd {

struct ConfigPerformance {
    std::vector<std::vector<double>> scores;   // node x fold, 0 where the fold failed
    std::vector<std::vector<double>> mb_sizes; // node x fold
    std::vector<std::optional<MixedGraph>> fold_graphs;
    std::vector<std::string> fold_errors; // nonempty marks a failed fold
    bool disqualified = false;            // more than half the folds failed
};

// Per fold: learn a graph on the training split; per node, fit a forest on
// the node's Markov boundary and score held-out predictions on the mutual
// information scale (the common currency across mixed column types). An
// empty boundary means a constant predictor and scores 0. A discovery
// failure marks the fold invalid.
ConfigPerformance config_performance(const Dataset& d, const ClConfig& cfg, const FoldPlan& folds,
                                     uint64_t seed = 0);

struct OctConfigSummary {
    ClConfig config;
    ConfigPerformance perf;
    double mean_score = 0.0; // over nodes x valid folds
    double mean_mb_size = 0.0;
};

struct OctReport {
    std::vector<OctConfigSummary> per_config;
    int best_index = -1;
    // configs whose paired fold scores cannot be told apart from best's;
    // includes best itself with p = 1
    std::vector<std::pair<int, double>> indistinguishable;
    int winner_index = -1;
    ClConfig winner;
    MixedGraph winner_graph;            // winner rerun on the full dataset
    double winner_graph_mb_size = 0.0;  // mean boundary size in winner_graph
};

// Cross-validated tournament over causal configurations: configs share one
// fold plan, are ranked by mean per-node predictive score, and every config
// statistically indistinguishable from the best stays in the running; the
// winner has the smallest mean Markov boundary among them (ties: higher
// score, then config order) and is refit on the full dataset.
OctReport oct_select(const Dataset& d, const std::vector<ClConfig>& configs, int k = 5,
                     int b = 1000, double alpha = 0.05, uint64_t seed = 0);

} // namespace autocd
