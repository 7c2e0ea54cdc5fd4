#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "autocd/dataset.hpp"

namespace autocd {

struct ForestSpec {
    int n_trees = 100;
    int min_leaf = 1;
    enum class FeatureRule { Sqrt, All } feature_rule = FeatureRule::Sqrt;
    std::optional<int> max_depth;
    uint64_t seed = 0;
};

struct Prediction {
    std::vector<double> values;             // regression mean per row
    std::vector<int> labels;                // classification argmax per row
    std::vector<std::vector<double>> probs; // classification vote fractions per row
};

// Bagged CART ensemble. Regression splits minimize summed squared error,
// classification splits minimize Gini impurity; per-split candidate features
// follow the feature rule. Categorical predictors are one-hot expanded.
//
// Randomness: tree t uses Rng(Rng::mix(seed + t)) and draws its bootstrap
// row indices first (n uniform_int draws), then one feature subset per split
// (partial Fisher-Yates).
class Forest {
public:
    static Forest train(const Dataset& d, int target, const std::vector<int>& predictors,
                        const ForestSpec& spec);

    // d must contain every predictor column by name with matching type.
    Prediction predict(const Dataset& d) const;

    bool classification() const { return classification_; }
    // constant training target: every tree is a single leaf
    bool degenerate() const { return degenerate_; }
    int n_classes() const { return static_cast<int>(class_levels_.size()); }
    const std::string& target_name() const { return target_name_; }

    nlohmann::json to_json() const;
    static Forest from_json(const nlohmann::json& j);

private:
    struct TreeNode {
        int feature = -1; // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double value = 0.0; // leaf: mean (regression) or class code (classification)
    };
    struct FeatureDef {
        std::string column;
        int level = -1; // one-hot level code, -1 for a continuous passthrough
    };

    std::vector<std::vector<TreeNode>> trees_;
    std::vector<FeatureDef> features_;
    std::string target_name_;
    bool classification_ = false;
    bool degenerate_ = false;
    std::vector<std::string> class_levels_;
    ForestSpec spec_;

    static std::vector<FeatureDef> feature_defs(const Dataset& d,
                                                const std::vector<int>& predictors);
    static std::vector<std::vector<double>> feature_matrix(const Dataset& d,
                                                           const std::vector<FeatureDef>& defs);
};

struct FoldPlan {
    int k = 0;
    std::vector<int> assignment; // row -> fold
    uint64_t seed = 0;

    std::vector<int> train_rows(int fold) const;
    std::vector<int> test_rows(int fold) const;
};

// Stratified by class when the target is categorical; fold sizes differ by
// at most one.
FoldPlan make_folds(const Dataset& d, int target, int k, uint64_t seed);
FoldPlan make_folds(int n_rows, int k, uint64_t seed);

} // namespace autocd
