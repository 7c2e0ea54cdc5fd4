#include "autocd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "autocd/rng.hpp"

namespace autocd {

namespace {

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

double mutual_information_score(const std::vector<double>& y_true,
                                const std::vector<double>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("mutual_information_score: length mismatch");
    const size_t n = y_true.size();
    if (n < 2) return 0.0;
    const double mt = mean(y_true), mp = mean(y_pred);
    double stt = 0.0, spp = 0.0, stp = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double a = y_true[i] - mt, b = y_pred[i] - mp;
        stt += a * a;
        spp += b * b;
        stp += a * b;
    }
    if (stt <= 0.0 || spp <= 0.0) return 0.0;
    double rho2 = (stp * stp) / (stt * spp);
    rho2 = std::min(rho2, 1.0 - 1e-12);
    return -0.5 * std::log(1.0 - rho2);
}

double mutual_information_score(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("mutual_information_score: length mismatch");
    const size_t n = y_true.size();
    if (n == 0) return 0.0;
    int kt = 0, kp = 0;
    for (size_t i = 0; i < n; ++i) {
        kt = std::max(kt, y_true[i] + 1);
        kp = std::max(kp, y_pred[i] + 1);
    }
    std::vector<double> joint(static_cast<size_t>(kt) * kp, 0.0), pt(kt, 0.0), pp(kp, 0.0);
    const double w = 1.0 / static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
        joint[static_cast<size_t>(y_true[i]) * kp + y_pred[i]] += w;
        pt[y_true[i]] += w;
        pp[y_pred[i]] += w;
    }
    double mi = 0.0;
    for (int a = 0; a < kt; ++a)
        for (int b = 0; b < kp; ++b) {
            const double j = joint[static_cast<size_t>(a) * kp + b];
            if (j > 0.0) mi += j * std::log(j / (pt[a] * pp[b]));
        }
    return std::max(0.0, mi);
}

double r2_score(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    if (y_true.size() != y_pred.size() || y_true.empty())
        throw std::invalid_argument("r2_score: bad input lengths");
    const double m = mean(y_true);
    double ss_tot = 0.0, ss_res = 0.0;
    for (size_t i = 0; i < y_true.size(); ++i) {
        ss_tot += (y_true[i] - m) * (y_true[i] - m);
        ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    }
    if (ss_tot <= 0.0) return ss_res <= 0.0 ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

double auroc_score(const std::vector<int>& y_true, const std::vector<double>& scores) {
    if (y_true.size() != scores.size() || y_true.empty())
        throw std::invalid_argument("auroc_score: bad input lengths");
    const size_t n = y_true.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&scores](size_t a, size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    size_t n_pos = 0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (size_t t = i; t < j; ++t)
            if (y_true[order[t]] == 1) {
                rank_sum_pos += midrank;
                ++n_pos;
            }
        i = j;
    }
    const size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("auroc_score: only one class present");
    return (rank_sum_pos - 0.5 * n_pos * (n_pos + 1)) /
           (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double mean_ovr_auroc(const std::vector<int>& y_true,
                      const std::vector<std::vector<double>>& probs, int n_classes) {
    if (y_true.size() != probs.size() || y_true.empty())
        throw std::invalid_argument("mean_ovr_auroc: bad input lengths");
    double sum = 0.0;
    int used = 0;
    for (int c = 0; c < n_classes; ++c) {
        std::vector<int> labels(y_true.size());
        std::vector<double> scores(y_true.size());
        int pos = 0;
        for (size_t r = 0; r < y_true.size(); ++r) {
            labels[r] = y_true[r] == c ? 1 : 0;
            pos += labels[r];
            scores[r] = probs[r][c];
        }
        if (pos == 0 || pos == static_cast<int>(y_true.size())) continue;
        sum += auroc_score(labels, scores);
        ++used;
    }
    if (used == 0) throw std::invalid_argument("mean_ovr_auroc: no scorable class");
    return sum / used;
}

PermutationResult permutation_indistinguishable(const std::vector<double>& best,
                                                const std::vector<double>& other, int b,
                                                double alpha, uint64_t seed) {
    if (best.size() != other.size() || best.empty())
        throw std::invalid_argument("permutation test: bad input lengths");
    if (b < 100) throw std::runtime_error("permutation test: b must be at least 100");

    const size_t n = best.size();
    std::vector<double> diff(n);
    for (size_t i = 0; i < n; ++i) diff[i] = best[i] - other[i];
    const double observed = mean(diff);

    Rng rng(seed);
    int count = 0;
    for (int rep = 0; rep < b; ++rep) {
        double sum = 0.0;
        for (size_t i = 0; i < n; ++i)
            sum += rng.uniform_int(2) == 0 ? diff[i] : -diff[i];
        if (sum / static_cast<double>(n) >= observed) ++count;
    }
    const double p = (1.0 + count) / (1.0 + b);
    return PermutationResult{p, p > alpha};
}

} // namespace autocd
