#include "autocd/afs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "autocd/metrics.hpp"
#include "autocd/rng.hpp"

namespace autocd {

std::string to_string(Selector s) { return s == Selector::Fbed ? "fbed" : "ses"; }

Selector selector_from_string(const std::string& s) {
    if (s == "fbed") return Selector::Fbed;
    if (s == "ses") return Selector::Ses;
    throw std::invalid_argument("unknown selector: " + s);
}

std::vector<AfsConfig> default_afs_grid() {
    std::vector<AfsConfig> grid;
    for (Selector sel : {Selector::Fbed, Selector::Ses})
        for (double alpha : {0.01, 0.05})
            for (int min_leaf : {1, 5}) {
                AfsConfig cfg;
                cfg.selector = sel;
                cfg.alpha = alpha;
                cfg.forest.min_leaf = min_leaf;
                grid.push_back(cfg);
            }
    return grid;
}

namespace {

// Untestable candidates are unselectable.
double p_of(CiSource& ci, int x, int target, const std::vector<int>& z) {
    try {
        return ci.test(x, target, z).p_value;
    } catch (const std::exception&) {
        return 1.0;
    }
}

bool next_combination(std::vector<int>& c, int m) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < m - (k - i)) {
            c[i]++;
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> candidate_columns(const Dataset& d, int target) {
    if (target < 0 || target >= d.n_cols())
        throw std::invalid_argument("feature selection: target out of range");
    std::vector<int> cand;
    for (int i = 0; i < d.n_cols(); ++i)
        if (i != target) cand.push_back(i);
    return cand;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("feature selection: alpha out of (0,1)");
}

// One forward run: sweeps of conditional tests against the growing
// selection; per sweep, insignificant candidates drop out of the run and the
// most significant one is admitted.
void fbed_forward_run(CiSource& ci, int target, const std::vector<int>& candidates,
                      double alpha, std::vector<int>* selected) {
    std::set<int> in(selected->begin(), selected->end());
    std::vector<int> remaining;
    for (int c : candidates)
        if (!in.count(c)) remaining.push_back(c);

    bool added = true;
    while (added && !remaining.empty()) {
        added = false;
        std::vector<int> keep;
        int best = -1;
        double best_p = std::numeric_limits<double>::infinity();
        for (int x : remaining) {
            double p = p_of(ci, x, target, *selected);
            if (p > alpha) continue;
            keep.push_back(x);
            if (p < best_p) {
                best_p = p;
                best = x;
            }
        }
        if (best >= 0) {
            selected->push_back(best);
            keep.erase(std::remove(keep.begin(), keep.end(), best), keep.end());
            added = true;
        }
        remaining = std::move(keep);
    }
}

void fbed_backward(CiSource& ci, int target, double alpha, std::vector<int>* selected) {
    while (selected->size() > 0) {
        int worst = -1;
        double worst_p = -1.0;
        for (size_t i = 0; i < selected->size(); ++i) {
            std::vector<int> rest = *selected;
            rest.erase(rest.begin() + i);
            double p = p_of(ci, (*selected)[i], target, rest);
            if (p > worst_p) {
                worst_p = p;
                worst = static_cast<int>(i);
            }
        }
        if (worst < 0 || worst_p <= alpha) break;
        selected->erase(selected->begin() + worst);
    }
}

} // namespace

std::vector<int> fbed_select(const Dataset& d, int target, double alpha, int k_runs, CiKind ci) {
    check_alpha(alpha);
    if (k_runs < 0) throw std::invalid_argument("fbed_select: negative k_runs");
    std::vector<int> candidates = candidate_columns(d, target);
    if (candidates.empty()) return {};
    CiTester tester(d, ci);

    std::vector<int> selected;
    for (int run = 0; run <= k_runs; ++run) {
        size_t before = selected.size();
        fbed_forward_run(tester, target, candidates, alpha, &selected);
        if (run > 0 && selected.size() == before) break;
    }
    fbed_backward(tester, target, alpha, &selected);
    std::sort(selected.begin(), selected.end());
    return selected;
}

namespace {

struct SesState {
    CiSource& ci;
    int target;
    double alpha;
    int max_k;
    std::vector<double> assoc_p;           // running max over tested subsets
    std::vector<std::vector<int>> reject;  // subset that pushed a candidate over alpha
    std::vector<std::pair<int, int>> equivalences;
};

// Tests x against the new conditioning sets that appeared when `fresh`
// joined the selection (every subset of the older selection plus fresh, or
// just the empty set at startup). Updates the running max; on rejection,
// remembers the guilty subset.
void ses_update(SesState& st, int x, const std::vector<int>& older, int fresh) {
    if (st.assoc_p[x] > st.alpha) return;
    int m = static_cast<int>(older.size());
    int cap = fresh < 0 ? 0 : std::min(st.max_k - 1, m);
    for (int l = 0; l <= cap && st.assoc_p[x] <= st.alpha; ++l) {
        std::vector<int> comb(l);
        for (int i = 0; i < l; ++i) comb[i] = i;
        do {
            std::vector<int> z;
            for (int i = 0; i < l; ++i) z.push_back(older[comb[i]]);
            if (fresh >= 0) z.push_back(fresh);
            double p = p_of(st.ci, x, st.target, z);
            if (p > st.assoc_p[x]) st.assoc_p[x] = p;
            if (p > st.alpha) {
                st.reject[x] = z;
                break;
            }
        } while (l > 0 && next_combination(comb, m));
    }
}

// Z fell to a subset containing V; they are interchangeable if V falls to
// the same subset with Z swapped in.
void ses_record_equivalences(SesState& st, int z_var, const std::vector<int>& subset) {
    for (int v : subset) {
        std::vector<int> swapped;
        for (int u : subset)
            if (u != v) swapped.push_back(u);
        swapped.push_back(z_var);
        if (p_of(st.ci, v, st.target, swapped) > st.alpha)
            st.equivalences.push_back({z_var, v});
    }
}

} // namespace

SesSelection ses_select(const Dataset& d, int target, double alpha, int max_k, CiKind ci) {
    check_alpha(alpha);
    if (max_k < 1) throw std::invalid_argument("ses_select: max_k must be at least 1");
    std::vector<int> candidates = candidate_columns(d, target);
    CiTester tester(d, ci);
    SesState st{tester, target, alpha, max_k, {}, {}, {}};
    st.assoc_p.assign(d.n_cols(), 0.0);
    st.reject.assign(d.n_cols(), {});

    std::vector<int> selected;
    std::vector<int> open = candidates;
    for (int x : open) ses_update(st, x, {}, -1);
    while (true) {
        // drop rejected candidates, recording why
        std::vector<int> still;
        for (int x : open) {
            if (st.assoc_p[x] > alpha) {
                ses_record_equivalences(st, x, st.reject[x]);
            } else {
                still.push_back(x);
            }
        }
        open = std::move(still);
        if (open.empty()) break;

        int best = open[0];
        for (int x : open)
            if (st.assoc_p[x] < st.assoc_p[best]) best = x;
        std::vector<int> older = selected;
        selected.push_back(best);
        open.erase(std::remove(open.begin(), open.end(), best), open.end());
        for (int x : open) ses_update(st, x, older, best);
    }

    // backward pruning with the same rejection bookkeeping
    bool removed = true;
    while (removed) {
        removed = false;
        for (size_t i = 0; i < selected.size(); ++i) {
            int v = selected[i];
            std::vector<int> rest = selected;
            rest.erase(rest.begin() + i);
            int top = std::min(max_k, static_cast<int>(rest.size()));
            bool rejected = false;
            for (int l = 0; l <= top && !rejected; ++l) {
                std::vector<int> comb(l);
                for (int j = 0; j < l; ++j) comb[j] = j;
                do {
                    std::vector<int> z;
                    for (int j = 0; j < l; ++j) z.push_back(rest[comb[j]]);
                    if (p_of(tester, v, target, z) > alpha) {
                        ses_record_equivalences(st, v, z);
                        rejected = true;
                        break;
                    }
                } while (l > 0 && next_combination(comb, static_cast<int>(rest.size())));
            }
            if (rejected) {
                selected.erase(selected.begin() + i);
                removed = true;
                break;
            }
        }
    }

    std::sort(selected.begin(), selected.end());
    SesSelection out;
    out.primary = selected;
    std::set<std::vector<int>> sets;
    sets.insert(selected);
    for (auto [z, v] : st.equivalences) {
        if (std::binary_search(selected.begin(), selected.end(), z)) continue;
        if (!std::binary_search(selected.begin(), selected.end(), v)) continue;
        std::vector<int> swap;
        for (int u : selected)
            if (u != v) swap.push_back(u);
        swap.push_back(z);
        std::sort(swap.begin(), swap.end());
        sets.insert(std::move(swap));
    }
    out.equivalent_sets.assign(sets.begin(), sets.end());
    return out;
}

namespace {

double holdout_score(const Forest& model, const Dataset& test, int target) {
    const Column& tc = test.col(target);
    Prediction p = model.predict(test);
    try {
        if (tc.type == ColumnType::Continuous) return r2_score(tc.values, p.values);
        if (tc.n_levels() == 2) {
            std::vector<double> pos(test.n_rows());
            for (int r = 0; r < test.n_rows(); ++r) pos[r] = p.probs[r][1];
            return auroc_score(tc.codes, pos);
        }
        return mean_ovr_auroc(tc.codes, p.probs, tc.n_levels());
    } catch (const std::exception&) {
        return tc.type == ColumnType::Continuous ? 0.0 : 0.5;
    }
}

double chance_score(const Dataset& d, int target) {
    return d.col(target).type == ColumnType::Continuous ? 0.0 : 0.5;
}

std::vector<int> run_selector(const Dataset& d, int target, const AfsConfig& cfg) {
    if (cfg.selector == Selector::Fbed)
        return fbed_select(d, target, cfg.alpha, cfg.k_runs, cfg.ci);
    return ses_select(d, target, cfg.alpha, cfg.max_k, cfg.ci).primary;
}

} // namespace

AfsResult run_afs(const Dataset& d_train, int target, const std::vector<AfsConfig>& grid,
                  const Dataset* d_test, uint64_t seed) {
    if (grid.empty()) throw std::invalid_argument("run_afs: empty grid");
    if (target < 0 || target >= d_train.n_cols())
        throw std::invalid_argument("run_afs: target out of range");
    const int k = 5;
    FoldPlan folds = make_folds(d_train, target, k, seed);

    int nc = static_cast<int>(grid.size());
    std::vector<double> scores(nc, 0.0), sizes(nc, 0.0);
    bool any_selected = false;
    for (int c = 0; c < nc; ++c) {
        double score_sum = 0.0, size_sum = 0.0;
        for (int f = 0; f < k; ++f) {
            Dataset train = d_train.select_rows(folds.train_rows(f));
            Dataset test = d_train.select_rows(folds.test_rows(f));
            std::vector<int> sel = run_selector(train, target, grid[c]);
            size_sum += static_cast<double>(sel.size());
            if (sel.empty()) {
                score_sum += chance_score(d_train, target);
                continue;
            }
            any_selected = true;
            ForestSpec spec = grid[c].forest;
            spec.seed = Rng::mix(seed ^ (static_cast<uint64_t>(c) * 131 + f + 1));
            Forest model = Forest::train(train, target, sel, spec);
            score_sum += holdout_score(model, test, target);
        }
        scores[c] = score_sum / k;
        sizes[c] = size_sum / k;
    }
    if (!any_selected) {
        std::string diag = "run_afs: no config selected any variable;";
        for (int c = 0; c < nc; ++c)
            diag += " [" + to_string(grid[c].selector) + " alpha=" +
                    std::to_string(grid[c].alpha) + " score=" + std::to_string(scores[c]) + "]";
        throw std::runtime_error(diag);
    }

    int best = 0;
    for (int c = 1; c < nc; ++c) {
        if (scores[c] > scores[best] ||
            (scores[c] == scores[best] && sizes[c] < sizes[best]))
            best = c;
    }

    AfsResult out;
    out.winner = grid[best];
    out.winner_index = best;
    out.cv_score = scores[best];
    out.grid_scores = scores;
    out.grid_mb_sizes = sizes;
    if (out.winner.selector == Selector::Ses) {
        SesSelection sel = ses_select(d_train, target, out.winner.alpha, out.winner.max_k,
                                      out.winner.ci);
        out.mb_est = sel.primary;
        out.equivalent_sets = sel.equivalent_sets;
    } else {
        out.mb_est = fbed_select(d_train, target, out.winner.alpha, out.winner.k_runs,
                                 out.winner.ci);
    }
    ForestSpec spec = out.winner.forest;
    spec.seed = Rng::mix(seed ^ (static_cast<uint64_t>(best) * 131));
    out.final_model = Forest::train(d_train, target, out.mb_est, spec);
    if (d_test) out.holdout_score = holdout_score(out.final_model, *d_test, target);
    return out;
}

} // namespace autocd
