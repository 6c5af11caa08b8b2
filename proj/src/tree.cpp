#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcc/error.hpp"
#include "rcc/learn.hpp"
#include "tree_builder.hpp"

namespace rcc {

namespace detail {

namespace {

struct SortEntry {
    double value;
    double target;  // y (classification) or residual (regression)
    double weight;  // bootstrap multiplicity / hessian carrier
    double extra;   // hessian for regression nodes, unused otherwise
};

double gini(double w1, double w) {
    double p = w1 / w;
    return 2.0 * p * (1.0 - p);
}

}  // namespace

// Grows a weighted Gini CART over the rows listed in idx. Recursion order is
// fixed (left before right) so the per-node feature draws consume the rng in
// a reproducible sequence.
class ClassificationBuilder {
  public:
    ClassificationBuilder(const TrainingSet& data, std::span<const double> weights,
                          const ClassificationParams& params, Rng& rng)
        : data_(data), weights_(weights), params_(params), rng_(rng), feature_pool_(data.cols) {}

    DecisionTree build(std::vector<std::uint32_t> idx) {
        DecisionTree tree;
        grow(tree, std::move(idx));
        return tree;
    }

  private:
    int grow(DecisionTree& tree, std::vector<std::uint32_t> idx) {
        double w = 0.0, w1 = 0.0;
        for (auto i : idx) {
            w += weights_[i];
            w1 += weights_[i] * data_.labels[i];
        }
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (w < 2.0 * params_.min_leaf_weight || w1 <= 0.0 || w1 >= w) {
            make_leaf(tree.nodes[node_id], w, w1);
            return node_id;
        }

        const double parent_impurity = gini(w1, w);
        double best_gain = 0.0;
        int best_feature = -1;
        double best_threshold = 0.0;

        draw_features();
        for (int f : drawn_features_) {
            scratch_.clear();
            for (auto i : idx)
                scratch_.push_back({data_.row(i)[f], static_cast<double>(data_.labels[i]), weights_[i], 0.0});
            std::sort(scratch_.begin(), scratch_.end(),
                      [](const SortEntry& a, const SortEntry& b) { return a.value < b.value; });
            double wl = 0.0, w1l = 0.0;
            for (std::size_t j = 0; j + 1 < scratch_.size(); ++j) {
                wl += scratch_[j].weight;
                w1l += scratch_[j].weight * scratch_[j].target;
                if (!(scratch_[j].value < scratch_[j + 1].value)) continue;
                double wr = w - wl, w1r = w1 - w1l;
                if (wl < params_.min_leaf_weight || wr < params_.min_leaf_weight) continue;
                double children = (wl * gini(w1l, wl) + wr * gini(w1r, wr)) / w;
                double gain = parent_impurity - children;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = 0.5 * (scratch_[j].value + scratch_[j + 1].value);
                }
            }
        }

        if (best_feature < 0 || best_gain <= params_.gain_eps) {
            make_leaf(tree.nodes[node_id], w, w1);
            return node_id;
        }

        auto mid = std::stable_partition(idx.begin(), idx.end(), [&](std::uint32_t i) {
            return data_.row(i)[best_feature] <= best_threshold;
        });
        std::vector<std::uint32_t> left_idx(idx.begin(), mid);
        std::vector<std::uint32_t> right_idx(mid, idx.end());
        idx.clear();
        idx.shrink_to_fit();

        tree.nodes[node_id].feature = best_feature;
        tree.nodes[node_id].threshold = best_threshold;
        int left = grow(tree, std::move(left_idx));
        tree.nodes[node_id].left = left;
        int right = grow(tree, std::move(right_idx));
        tree.nodes[node_id].right = right;
        return node_id;
    }

    void make_leaf(TreeNode& node, double w, double w1) {
        node.feature = -1;
        node.leaf_value = w > 0.0 ? w1 / w : 0.0;
        node.count = w;
    }

    void draw_features() {
        const std::size_t m = data_.cols;
        std::size_t k = static_cast<std::size_t>(params_.features_per_split);
        if (k > m) k = m;
        std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
        drawn_features_.clear();
        for (std::size_t j = 0; j < k; ++j) {
            std::size_t pick = j + rng_.index(m - j);
            std::swap(feature_pool_[j], feature_pool_[pick]);
            drawn_features_.push_back(feature_pool_[j]);
        }
    }

    const TrainingSet& data_;
    std::span<const double> weights_;
    ClassificationParams params_;
    Rng& rng_;
    std::vector<int> feature_pool_;
    std::vector<int> drawn_features_;
    std::vector<SortEntry> scratch_;
};

DecisionTree build_classification_tree(const TrainingSet& data, std::vector<std::uint32_t> idx,
                                       std::span<const double> weights,
                                       const ClassificationParams& params, Rng& rng) {
    if (idx.empty()) throw contract_error("train_tree: empty row set");
    ClassificationBuilder builder(data, weights, params, rng);
    return builder.build(std::move(idx));
}

// Least-squares regression CART over residuals, depth-limited; leaves take a
// Newton step sum(grad) / sum(hess) clamped to [-4, 4]. All features are
// scanned in index order, so the builder is rng-free.
class RegressionBuilder {
  public:
    RegressionBuilder(const TrainingSet& data, std::span<const double> grad,
                      std::span<const double> hess, const RegressionParams& params)
        : data_(data), grad_(grad), hess_(hess), params_(params) {}

    DecisionTree build(std::vector<std::uint32_t> idx) {
        DecisionTree tree;
        grow(tree, std::move(idx), 0);
        return tree;
    }

  private:
    int grow(DecisionTree& tree, std::vector<std::uint32_t> idx, int depth) {
        double n = static_cast<double>(idx.size());
        double sum_g = 0.0, sum_h = 0.0;
        for (auto i : idx) {
            sum_g += grad_[i];
            sum_h += hess_[i];
        }
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (depth >= params_.max_depth || idx.size() < 2 * static_cast<std::size_t>(params_.min_leaf_count)) {
            make_leaf(tree.nodes[node_id], sum_g, sum_h, n);
            return node_id;
        }

        // Variance-reduction split: maximize sum^2/n over the two children.
        const double parent_score = sum_g * sum_g / n;
        double best_gain = 0.0;
        int best_feature = -1;
        double best_threshold = 0.0;

        for (std::size_t f = 0; f < data_.cols; ++f) {
            scratch_.clear();
            for (auto i : idx) scratch_.push_back({data_.row(i)[f], grad_[i], 1.0, hess_[i]});
            std::sort(scratch_.begin(), scratch_.end(),
                      [](const SortEntry& a, const SortEntry& b) { return a.value < b.value; });
            double sl = 0.0;
            for (std::size_t j = 0; j + 1 < scratch_.size(); ++j) {
                sl += scratch_[j].target;
                if (!(scratch_[j].value < scratch_[j + 1].value)) continue;
                std::size_t nl = j + 1, nr = scratch_.size() - nl;
                if (nl < static_cast<std::size_t>(params_.min_leaf_count) ||
                    nr < static_cast<std::size_t>(params_.min_leaf_count))
                    continue;
                double sr = sum_g - sl;
                double gain = sl * sl / static_cast<double>(nl) + sr * sr / static_cast<double>(nr) - parent_score;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = static_cast<int>(f);
                    best_threshold = 0.5 * (scratch_[j].value + scratch_[j + 1].value);
                }
            }
        }

        if (best_feature < 0 || best_gain <= params_.gain_eps) {
            make_leaf(tree.nodes[node_id], sum_g, sum_h, n);
            return node_id;
        }

        auto mid = std::stable_partition(idx.begin(), idx.end(), [&](std::uint32_t i) {
            return data_.row(i)[best_feature] <= best_threshold;
        });
        std::vector<std::uint32_t> left_idx(idx.begin(), mid);
        std::vector<std::uint32_t> right_idx(mid, idx.end());
        idx.clear();
        idx.shrink_to_fit();

        tree.nodes[node_id].feature = best_feature;
        tree.nodes[node_id].threshold = best_threshold;
        int left = grow(tree, std::move(left_idx), depth + 1);
        tree.nodes[node_id].left = left;
        int right = grow(tree, std::move(right_idx), depth + 1);
        tree.nodes[node_id].right = right;
        return node_id;
    }

    void make_leaf(TreeNode& node, double sum_g, double sum_h, double n) {
        node.feature = -1;
        double v = sum_h > 0.0 ? sum_g / sum_h : 0.0;
        node.leaf_value = std::clamp(v, -4.0, 4.0);
        node.count = n;
    }

    const TrainingSet& data_;
    std::span<const double> grad_;
    std::span<const double> hess_;
    RegressionParams params_;
    std::vector<SortEntry> scratch_;
};

DecisionTree build_regression_tree(const TrainingSet& data, std::vector<std::uint32_t> idx,
                                   std::span<const double> grad, std::span<const double> hess,
                                   const RegressionParams& params) {
    if (idx.empty()) throw contract_error("regression tree: empty row set");
    RegressionBuilder builder(data, grad, hess, params);
    return builder.build(std::move(idx));
}

}  // namespace detail

DecisionTree train_tree(const TrainingSet& data, std::span<const std::size_t> row_indices,
                        const ForestConfig& cfg, Rng& rng) {
    if (row_indices.empty()) throw contract_error("train_tree: empty row set");
    std::vector<double> weights(data.rows(), 0.0);
    std::vector<std::uint32_t> idx;
    for (std::size_t r : row_indices) {
        if (r >= data.rows()) throw contract_error("train_tree: row index out of range");
        if (weights[r] == 0.0) idx.push_back(static_cast<std::uint32_t>(r));
        weights[r] += 1.0;
    }
    detail::ClassificationParams params;
    params.min_leaf_weight = std::ceil(cfg.min_leaf_fraction * static_cast<double>(row_indices.size()));
    if (params.min_leaf_weight < 1.0) params.min_leaf_weight = 1.0;
    params.features_per_split = cfg.features_per_split > 0
                                    ? cfg.features_per_split
                                    : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(data.cols))));
    return detail::build_classification_tree(data, std::move(idx), weights, params, rng);
}

}  // namespace rcc
