#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "autocd/discovery.hpp"
#include "autocd/knowledge.hpp"

namespace autocd {

// One synthetic benchmark campaign: per replicate, draw a random lagged SEM,
// run the full pipeline on a fresh sample and score every stage against the
// ground truth.
struct BenchSpec {
    int n_vars = 20;
    int max_lag = 2;
    int n_replicates = 10;
    int n_train = 2000;
    int n_holdout = 500;
    int n_boot = 100;
    std::optional<int> block_len; // rows resampled iid when absent
    uint64_t seed = 0;
};

struct BenchRow {
    int replicate = 0;
    // feature selection against the true Markov boundary
    double mb_precision = 0.0;
    double mb_recall = 0.0;
    // holdout R2 of the true linear model vs the pipeline's final model
    double r2_true = 0.0;
    double r2_est = 0.0;
    double delta_r2 = 0.0;
    // causal learning against the marginal of the true graph over the true
    // Markov boundary's variables
    std::string winner_config;
    double adj_precision = 0.0;
    double adj_recall = 0.0;
    int shd_winner = 0;
    int shd_best = 0;   // best config in hindsight
    int shd_random = 0; // uniformly drawn config
    // edge-consistency calibration; absent when the winner has no edges or
    // every reported edge has the same truth label
    std::optional<double> auc;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    double mean_mb_precision = 0.0;
    double mean_mb_recall = 0.0;
    double mean_delta_r2 = 0.0;
    double mean_adj_precision = 0.0;
    double mean_adj_recall = 0.0;
    double mean_shd_winner_gap = 0.0; // mean(shd_winner - shd_best)
    double mean_shd_random_gap = 0.0; // mean(shd_random - shd_best)
    std::optional<double> mean_auc;   // over replicates where AUC is defined
};

// PC_STABLE and FCI at significance 0.01 and 0.05, all sharing the given
// background knowledge.
std::vector<ClConfig> default_cl_grid(const Knowledge& knowledge);

// Runs the campaign. When progress is given, one line per replicate is
// written to it as results come in.
BenchResult run_bench(const BenchSpec& spec, std::ostream* progress = nullptr);

std::string bench_csv(const BenchResult& result);

} // namespace autocd
