#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autocd/ci_tests.hpp"
#include "autocd/dataset.hpp"
#include "autocd/forest.hpp"

namespace autocd {

enum class Selector { Fbed, Ses };

std::string to_string(Selector s);
Selector selector_from_string(const std::string& s);

struct AfsConfig {
    Selector selector = Selector::Fbed;
    double alpha = 0.05;
    CiKind ci = CiKind::Auto;
    ForestSpec forest;
    int k_runs = 1; // FBED forward restarts
    int max_k = 3;  // SES conditioning cap
};

// The CASH grid from the pipeline defaults: {FBED, SES} x {0.01, 0.05} x
// {min_leaf 1, 5}, 100 trees each.
std::vector<AfsConfig> default_afs_grid();

// Forward-backward selection with early dropping. Candidates whose p-value
// against the target exceeds alpha (conditional on the current selection)
// leave the current forward run; the best remaining candidate joins the
// selection; after a run stalls, dropped candidates are restored and the
// forward phase reruns k_runs more times. The backward phase then drops
// selected variables that lost significance. Ties break on smaller p, then
// column order. Returns sorted column indices.
std::vector<int> fbed_select(const Dataset& d, int target, double alpha, int k_runs, CiKind ci);

struct SesSelection {
    std::vector<int> primary;
    // primary plus every single-swap variant justified by a recorded
    // equivalence; contains at least primary itself
    std::vector<std::vector<int>> equivalent_sets;
};

// Max-min forward selection: a candidate's association is its worst p-value
// over conditioning subsets of the selected set (size <= max_k); the
// candidate with the best worst-case joins while it stays below alpha.
// Rejections record equivalences: when Z falls to a subset containing V and
// V falls to the same subset with Z swapped in, the two are interchangeable.
SesSelection ses_select(const Dataset& d, int target, double alpha, int max_k, CiKind ci);

struct AfsResult {
    std::vector<int> mb_est;
    std::vector<std::vector<int>> equivalent_sets; // SES winners only
    AfsConfig winner;
    int winner_index = -1;
    double cv_score = 0.0;
    std::optional<double> holdout_score;
    Forest final_model;
    std::vector<double> grid_scores;        // mean CV score per config
    std::vector<double> grid_mb_sizes;      // mean selected count per config
};

// Grid search: per config, 5-fold CV (selector on the fold's training rows,
// forest on the selected columns, target-appropriate score on the held-out
// rows: R^2, AUROC, or mean one-vs-rest AUROC). Winner = best mean score,
// ties to fewer selected columns then grid order; refit on all of d_train.
// All randomness (folds, forests) derives from `seed`; ForestSpec seeds in
// the grid are ignored.
AfsResult run_afs(const Dataset& d_train, int target, const std::vector<AfsConfig>& grid,
                  const Dataset* d_test = nullptr, uint64_t seed = 0);

} // namespace autocd
