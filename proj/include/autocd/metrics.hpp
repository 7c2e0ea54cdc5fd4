#pragma once

#include <cstdint>
#include <vector>

namespace autocd {

// Gaussian-approximation mutual information for continuous pairs:
// -0.5 * ln(1 - rho^2) with rho^2 capped at 1 - 1e-12. Constant inputs give 0.
double mutual_information_score(const std::vector<double>& y_true,
                                const std::vector<double>& y_pred);

// Plug-in mutual information (nats) of the true-vs-predicted label table.
double mutual_information_score(const std::vector<int>& y_true, const std::vector<int>& y_pred);

// 1 - SS_res/SS_tot. A constant y_true scores 1 when matched exactly, else 0.
double r2_score(const std::vector<double>& y_true, const std::vector<double>& y_pred);

// Midrank AUROC of binary labels (0/1) against scores. Throws when only one
// class is present.
double auroc_score(const std::vector<int>& y_true, const std::vector<double>& scores);

// Unweighted mean of one-vs-rest AUROCs over the classes present in y_true;
// probs[r][c] is the score of class c for row r.
double mean_ovr_auroc(const std::vector<int>& y_true,
                      const std::vector<std::vector<double>>& probs, int n_classes);

struct PermutationResult {
    double p_value = 1.0;
    bool indistinguishable = true;
};

// Paired sign-flip test of mean(best - other) > 0 with b permutations and
// plus-one correction; indistinguishable iff p > alpha. b < 100 is a config
// error.
PermutationResult permutation_indistinguishable(const std::vector<double>& best,
                                                const std::vector<double>& other, int b,
                                                double alpha, uint64_t seed);

} // namespace autocd
