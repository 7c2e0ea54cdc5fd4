#include "autocd/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "autocd/rng.hpp"

namespace autocd {

// One-hot expands categorical predictors; indicator columns take values 0/1
// so a 0.5 threshold separates the level.
std::vector<Forest::FeatureDef> Forest::feature_defs(const Dataset& d,
                                                     const std::vector<int>& predictors) {
    std::vector<FeatureDef> defs;
    for (int p : predictors) {
        const Column& c = d.col(p);
        if (c.type == ColumnType::Continuous) {
            defs.push_back({c.name, -1});
        } else {
            for (int l = 0; l < c.n_levels(); ++l) defs.push_back({c.name, l});
        }
    }
    return defs;
}

std::vector<std::vector<double>> Forest::feature_matrix(const Dataset& d,
                                                        const std::vector<FeatureDef>& defs) {
    int n = d.n_rows();
    std::vector<std::vector<double>> x(n, std::vector<double>(defs.size(), 0.0));
    for (size_t f = 0; f < defs.size(); ++f) {
        int ci = d.index_of(defs[f].column);
        const Column& c = d.col(ci);
        if (defs[f].level < 0) {
            if (c.type != ColumnType::Continuous)
                throw std::invalid_argument("forest: column '" + c.name +
                                            "' changed type between train and predict");
            for (int r = 0; r < n; ++r) x[r][f] = c.values[r];
        } else {
            if (c.type != ColumnType::Categorical)
                throw std::invalid_argument("forest: column '" + c.name +
                                            "' changed type between train and predict");
            for (int r = 0; r < n; ++r) x[r][f] = c.codes[r] == defs[f].level ? 1.0 : 0.0;
        }
    }
    return x;
}

namespace {

struct NodeRec {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

class CartGrower {
public:
    CartGrower(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
               bool classification, int n_classes, const ForestSpec& spec, Rng& rng)
        : x_(x), y_(y), classification_(classification), n_classes_(n_classes), spec_(spec),
          rng_(rng), n_features_(x.empty() ? 0 : static_cast<int>(x[0].size())) {}

    std::vector<NodeRec> grow_tree(std::vector<int> rows) {
        nodes_.clear();
        grow(std::move(rows), 0);
        return std::move(nodes_);
    }

private:
    const std::vector<std::vector<double>>& x_;
    const std::vector<double>& y_;
    bool classification_;
    int n_classes_;
    const ForestSpec& spec_;
    Rng& rng_;
    int n_features_;
    std::vector<NodeRec> nodes_;

    double leaf_value(const std::vector<int>& rows) const {
        if (classification_) {
            std::vector<int> counts(n_classes_, 0);
            for (int r : rows) counts[static_cast<int>(y_[r])]++;
            int best = 0;
            for (int k = 1; k < n_classes_; ++k)
                if (counts[k] > counts[best]) best = k;
            return static_cast<double>(best);
        }
        double s = 0.0;
        for (int r : rows) s += y_[r];
        return s / static_cast<double>(rows.size());
    }

    bool pure(const std::vector<int>& rows) const {
        for (size_t i = 1; i < rows.size(); ++i)
            if (y_[rows[i]] != y_[rows[0]]) return false;
        return true;
    }

    std::vector<int> candidate_features() {
        if (spec_.feature_rule == ForestSpec::FeatureRule::All || n_features_ <= 1) {
            std::vector<int> all(n_features_);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        int k = std::max(1, static_cast<int>(std::floor(std::sqrt(
                                static_cast<double>(n_features_)))));
        std::vector<int> pool(n_features_);
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(rng_.uniform_int(n_features_ - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    // Best threshold on one feature; rows arrive sorted by (feature value, row).
    // Returns impurity of the best split or infinity when none is valid.
    double best_threshold(const std::vector<int>& sorted, int f, double* threshold) const {
        int n = static_cast<int>(sorted.size());
        double best = std::numeric_limits<double>::infinity();
        if (classification_) {
            std::vector<int> left(n_classes_, 0), total(n_classes_, 0);
            for (int r : sorted) total[static_cast<int>(y_[r])]++;
            int nl = 0;
            for (int i = 0; i + 1 < n; ++i) {
                left[static_cast<int>(y_[sorted[i]])]++;
                nl++;
                double v0 = x_[sorted[i]][f], v1 = x_[sorted[i + 1]][f];
                if (v0 == v1) continue;
                int nr = n - nl;
                if (nl < spec_.min_leaf || nr < spec_.min_leaf) continue;
                double gl = 0.0, gr = 0.0;
                for (int k = 0; k < n_classes_; ++k) {
                    double pl = static_cast<double>(left[k]) / nl;
                    double pr = static_cast<double>(total[k] - left[k]) / nr;
                    gl += pl * pl;
                    gr += pr * pr;
                }
                double imp = nl * (1.0 - gl) + nr * (1.0 - gr);
                if (imp < best) {
                    best = imp;
                    *threshold = 0.5 * (v0 + v1);
                }
            }
        } else {
            double sum = 0.0;
            for (int r : sorted) sum += y_[r];
            double lsum = 0.0, lsq = 0.0, sq = 0.0;
            for (int r : sorted) sq += y_[r] * y_[r];
            int nl = 0;
            for (int i = 0; i + 1 < n; ++i) {
                double yi = y_[sorted[i]];
                lsum += yi;
                lsq += yi * yi;
                nl++;
                double v0 = x_[sorted[i]][f], v1 = x_[sorted[i + 1]][f];
                if (v0 == v1) continue;
                int nr = n - nl;
                if (nl < spec_.min_leaf || nr < spec_.min_leaf) continue;
                double rsum = sum - lsum, rsq = sq - lsq;
                double sse = (lsq - lsum * lsum / nl) + (rsq - rsum * rsum / nr);
                if (sse < best) {
                    best = sse;
                    *threshold = 0.5 * (v0 + v1);
                }
            }
        }
        return best;
    }

    void grow(std::vector<int> rows, int depth) {
        int me = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[me].value = leaf_value(rows);
        bool stop = pure(rows) || static_cast<int>(rows.size()) < 2 * spec_.min_leaf ||
                    (spec_.max_depth && depth >= *spec_.max_depth);
        if (stop) return;

        std::vector<int> feats = candidate_features();
        int best_f = -1;
        double best_t = 0.0;
        double best_imp = std::numeric_limits<double>::infinity();
        std::vector<int> sorted = rows;
        for (int f : feats) {
            std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
                if (x_[a][f] != x_[b][f]) return x_[a][f] < x_[b][f];
                return a < b;
            });
            double t = 0.0;
            double imp = best_threshold(sorted, f, &t);
            if (imp < best_imp) {
                best_imp = imp;
                best_f = f;
                best_t = t;
            }
        }
        if (best_f < 0) return;

        std::vector<int> lrows, rrows;
        for (int r : rows)
            (x_[r][best_f] <= best_t ? lrows : rrows).push_back(r);
        nodes_[me].feature = best_f;
        nodes_[me].threshold = best_t;
        nodes_[me].left = static_cast<int>(nodes_.size());
        grow(std::move(lrows), depth + 1);
        nodes_[me].right = static_cast<int>(nodes_.size());
        grow(std::move(rrows), depth + 1);
    }
};

} // namespace

Forest Forest::train(const Dataset& d, int target, const std::vector<int>& predictors,
                     const ForestSpec& spec) {
    if (target < 0 || target >= d.n_cols()) throw std::invalid_argument("forest: target out of range");
    if (spec.n_trees < 1) throw std::invalid_argument("forest: n_trees must be positive");
    if (spec.min_leaf < 1) throw std::invalid_argument("forest: min_leaf must be positive");
    for (int p : predictors) {
        if (p < 0 || p >= d.n_cols()) throw std::invalid_argument("forest: predictor out of range");
        if (p == target) throw std::invalid_argument("forest: target used as predictor");
    }
    if (d.n_rows() < 1) throw std::invalid_argument("forest: empty dataset");

    Forest fo;
    fo.spec_ = spec;
    const Column& tc = d.col(target);
    fo.target_name_ = tc.name;
    fo.classification_ = tc.type == ColumnType::Categorical;
    if (fo.classification_) fo.class_levels_ = tc.levels;
    fo.features_ = feature_defs(d, predictors);

    std::vector<std::vector<double>> x = feature_matrix(d, fo.features_);
    std::vector<double> y(d.n_rows());
    for (int r = 0; r < d.n_rows(); ++r)
        y[r] = fo.classification_ ? static_cast<double>(tc.codes[r]) : tc.values[r];

    fo.degenerate_ = true;
    for (size_t r = 1; r < y.size(); ++r)
        if (y[r] != y[0]) {
            fo.degenerate_ = false;
            break;
        }

    int n = d.n_rows();
    int n_classes = fo.classification_ ? tc.n_levels() : 0;
    fo.trees_.reserve(spec.n_trees);
    for (int t = 0; t < spec.n_trees; ++t) {
        Rng rng(Rng::mix(spec.seed + static_cast<uint64_t>(t)));
        std::vector<int> rows(n);
        for (int i = 0; i < n; ++i) rows[i] = static_cast<int>(rng.uniform_int(n));
        CartGrower grower(x, y, fo.classification_, n_classes, spec, rng);
        std::vector<NodeRec> recs = grower.grow_tree(std::move(rows));
        std::vector<TreeNode> tree(recs.size());
        for (size_t i = 0; i < recs.size(); ++i)
            tree[i] = {recs[i].feature, recs[i].threshold, recs[i].left, recs[i].right,
                       recs[i].value};
        fo.trees_.push_back(std::move(tree));
    }
    return fo;
}

Prediction Forest::predict(const Dataset& d) const {
    std::vector<std::vector<double>> x = feature_matrix(d, features_);
    int n = d.n_rows();
    Prediction out;
    if (!classification_) {
        out.values.assign(n, 0.0);
        for (int r = 0; r < n; ++r) {
            double s = 0.0;
            for (const auto& tree : trees_) {
                int i = 0;
                while (tree[i].feature >= 0)
                    i = x[r][tree[i].feature] <= tree[i].threshold ? tree[i].left : tree[i].right;
                s += tree[i].value;
            }
            out.values[r] = s / static_cast<double>(trees_.size());
        }
        return out;
    }
    int k = n_classes();
    out.probs.assign(n, std::vector<double>(k, 0.0));
    out.labels.assign(n, 0);
    for (int r = 0; r < n; ++r) {
        for (const auto& tree : trees_) {
            int i = 0;
            while (tree[i].feature >= 0)
                i = x[r][tree[i].feature] <= tree[i].threshold ? tree[i].left : tree[i].right;
            out.probs[r][static_cast<int>(tree[i].value)] += 1.0;
        }
        int best = 0;
        for (int c = 0; c < k; ++c) {
            out.probs[r][c] /= static_cast<double>(trees_.size());
            if (out.probs[r][c] > out.probs[r][best]) best = c;
        }
        out.labels[r] = best;
    }
    return out;
}

nlohmann::json Forest::to_json() const {
    nlohmann::json j;
    j["target"] = target_name_;
    j["classification"] = classification_;
    j["degenerate"] = degenerate_;
    j["class_levels"] = class_levels_;
    j["spec"] = {{"n_trees", spec_.n_trees},
                 {"min_leaf", spec_.min_leaf},
                 {"feature_rule", spec_.feature_rule == ForestSpec::FeatureRule::Sqrt ? "sqrt" : "all"},
                 {"seed", spec_.seed}};
    if (spec_.max_depth) j["spec"]["max_depth"] = *spec_.max_depth;
    j["features"] = nlohmann::json::array();
    for (const auto& f : features_) {
        nlohmann::json fj = {{"column", f.column}};
        if (f.level >= 0) fj["level"] = f.level;
        j["features"].push_back(fj);
    }
    j["trees"] = nlohmann::json::array();
    for (const auto& tree : trees_) {
        nlohmann::json tj = nlohmann::json::array();
        for (const auto& nd : tree)
            tj.push_back({{"f", nd.feature},
                          {"t", nd.threshold},
                          {"l", nd.left},
                          {"r", nd.right},
                          {"v", nd.value}});
        j["trees"].push_back(std::move(tj));
    }
    return j;
}

Forest Forest::from_json(const nlohmann::json& j) {
    Forest fo;
    fo.target_name_ = j.at("target").get<std::string>();
    fo.classification_ = j.at("classification").get<bool>();
    fo.degenerate_ = j.at("degenerate").get<bool>();
    fo.class_levels_ = j.at("class_levels").get<std::vector<std::string>>();
    const auto& sj = j.at("spec");
    fo.spec_.n_trees = sj.at("n_trees").get<int>();
    fo.spec_.min_leaf = sj.at("min_leaf").get<int>();
    fo.spec_.feature_rule = sj.at("feature_rule").get<std::string>() == "all"
                                ? ForestSpec::FeatureRule::All
                                : ForestSpec::FeatureRule::Sqrt;
    fo.spec_.seed = sj.at("seed").get<uint64_t>();
    if (sj.contains("max_depth")) fo.spec_.max_depth = sj.at("max_depth").get<int>();
    for (const auto& fj : j.at("features")) {
        FeatureDef f;
        f.column = fj.at("column").get<std::string>();
        f.level = fj.contains("level") ? fj.at("level").get<int>() : -1;
        fo.features_.push_back(std::move(f));
    }
    for (const auto& tj : j.at("trees")) {
        std::vector<TreeNode> tree;
        for (const auto& nj : tj)
            tree.push_back({nj.at("f").get<int>(), nj.at("t").get<double>(), nj.at("l").get<int>(),
                            nj.at("r").get<int>(), nj.at("v").get<double>()});
        fo.trees_.push_back(std::move(tree));
    }
    return fo;
}

std::vector<int> FoldPlan::train_rows(int fold) const {
    std::vector<int> out;
    for (size_t r = 0; r < assignment.size(); ++r)
        if (assignment[r] != fold) out.push_back(static_cast<int>(r));
    return out;
}

std::vector<int> FoldPlan::test_rows(int fold) const {
    std::vector<int> out;
    for (size_t r = 0; r < assignment.size(); ++r)
        if (assignment[r] == fold) out.push_back(static_cast<int>(r));
    return out;
}

FoldPlan make_folds(int n_rows, int k, uint64_t seed) {
    if (k < 2) throw std::invalid_argument("make_folds: need at least 2 folds");
    if (n_rows < k) throw std::invalid_argument("make_folds: fewer rows than folds");
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignment.resize(n_rows);
    std::vector<int> order(n_rows);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    for (int i = 0; i < n_rows; ++i) plan.assignment[order[i]] = i % k;
    return plan;
}

FoldPlan make_folds(const Dataset& d, int target, int k, uint64_t seed) {
    const Column& tc = d.col(target);
    if (tc.type != ColumnType::Categorical) return make_folds(d.n_rows(), k, seed);
    if (k < 2) throw std::invalid_argument("make_folds: need at least 2 folds");
    if (d.n_rows() < k) throw std::invalid_argument("make_folds: fewer rows than folds");

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignment.assign(d.n_rows(), 0);
    std::vector<std::vector<int>> by_class(tc.n_levels());
    for (int r = 0; r < d.n_rows(); ++r) by_class[tc.codes[r]].push_back(r);
    Rng rng(seed);
    int next = 0;
    for (auto& rows : by_class) {
        rng.shuffle(rows);
        for (int r : rows) {
            plan.assignment[r] = next % k;
            next++;
        }
    }
    return plan;
}

} // namespace autocd
