#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcc/rff.hpp"
#include "rcc/rng.hpp"

namespace rcc {

struct TrainingSet {
    std::vector<std::string> ids;
    std::vector<std::uint8_t> labels;  // binary targets, 0 or 1
    std::size_t cols = 0;
    std::vector<double> features;  // row-major, ids.size() x cols
    std::uint64_t basis_digest = 0;

    std::size_t rows() const { return ids.size(); }
    std::span<const double> row(std::size_t i) const { return {features.data() + i * cols, cols}; }
};

// Direction task: rows labeled +1/-1; class 1 means XcausesY.
TrainingSet make_direction_training(const FeatureTable& t);
// Causal-vs-noncausal task: all labeled rows; class 1 means causal.
TrainingSet make_causal_training(const FeatureTable& t);

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    int left = -1;
    int right = -1;
    double threshold = 0.0;
    double leaf_value = 0.0;  // class-1 fraction (classification) or additive step (regression)
    double count = 0.0;       // total training weight that reached the leaf
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // node 0 is the root

    double predict(std::span<const double> row) const {
        int i = 0;
        while (nodes[i].feature >= 0)
            i = row[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
        return nodes[i].leaf_value;
    }
};

struct ForestConfig {
    int n_trees = 500;
    double min_leaf_fraction = 0.01;
    int features_per_split = 0;  // 0 means ceil(sqrt(m))
    bool bootstrap = true;
    std::uint64_t seed = 0;
};

struct ForestModel {
    std::vector<DecisionTree> trees;
    ForestConfig config;
    std::uint64_t basis_digest = 0;
};

struct GBMConfig {
    int rounds = 300;
    int max_depth = 3;
    double learning_rate = 0.1;
    int min_leaf_count = 10;
    double subsample = 1.0;
    std::uint64_t seed = 0;
};

struct GBMModel {
    double prior_logodds = 0.0;
    double learning_rate = 0.1;
    std::vector<DecisionTree> trees;  // regression trees on the logit scale
    GBMConfig config;
    std::uint64_t basis_digest = 0;
};

// Greedy CART on the rows given by row_indices (repeats act as weights).
// Splits minimize weighted Gini impurity over features_per_split randomly
// chosen features; growth stops when a split would leave less than
// min_leaf_fraction of the rows in a child or the impurity gain drops to
// 1e-12 or below.
DecisionTree train_tree(const TrainingSet& data, std::span<const std::size_t> row_indices,
                        const ForestConfig& cfg, Rng& rng);

// Bootstrap ensemble with per-tree seeds derived from cfg.seed. Rows are
// canonicalized by id before sampling, so any row permutation of `data`
// yields the same per-id predictions. Optional inbag_counts receives, per
// tree, the bootstrap multiplicity of every row (indexed as in `data`).
ForestModel train_forest(const TrainingSet& data, const ForestConfig& cfg, unsigned jobs = 1,
                         std::vector<std::vector<std::uint32_t>>* inbag_counts = nullptr);

double predict_forest_row(const ForestModel& model, std::span<const double> row);
double predict_forest(const ForestModel& model, const FeatureVector& f);

// Stagewise logistic boosting: round t fits a regression tree to the
// residuals y - sigmoid(F), leaf values take one Newton step
// sum(r) / sum(p(1-p)) clamped to [-4, 4], F0 is the prior log-odds.
GBMModel train_gbm(const TrainingSet& data, const GBMConfig& cfg);

double predict_gbm_row(const GBMModel& model, std::span<const double> row);
double predict_gbm(const GBMModel& model, const FeatureVector& f);

double logistic_loss(std::span<const double> margins, std::span<const std::uint8_t> labels);

struct CVResult {
    std::vector<GBMConfig> grid;
    std::vector<std::vector<double>> fold_aucs;  // grid.size() x k
    std::vector<double> mean_aucs;
    std::size_t best_index = 0;

    const GBMConfig& best() const { return grid[best_index]; }
};

// The default hyperparameter grid used when none is supplied:
// rounds {100, 300, 500} x depth {3, 5} x learning rate {0.05, 0.1}.
std::vector<GBMConfig> default_gbm_grid(std::uint64_t seed);

// Stratified k-fold selection by mean validation AUC; ties break toward
// fewer rounds, then shallower depth, then larger leaves, then grid order.
CVResult cross_validate(const TrainingSet& data, std::span<const GBMConfig> grid, int k,
                        std::uint64_t seed, unsigned jobs = 1);

}  // namespace rcc
