#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcc/error.hpp"
#include "rcc/learn.hpp"
#include "rcc/parallel.hpp"
#include "tree_builder.hpp"

namespace rcc {

namespace detail {

std::vector<std::uint32_t> canonical_order(const TrainingSet& data) {
    std::vector<std::uint32_t> order(data.rows());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (data.ids[a] != data.ids[b]) return data.ids[a] < data.ids[b];
        return a < b;
    });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (data.ids[order[i]] == data.ids[order[i - 1]])
            throw contract_error("training set: duplicate id '" + data.ids[order[i]] + "'");
    return order;
}

}  // namespace detail

namespace {

void require_both_classes(const TrainingSet& data) {
    bool has0 = false, has1 = false;
    for (auto l : data.labels) (l ? has1 : has0) = true;
    if (!has0 || !has1) throw contract_error("training data contains a single class");
}

}  // namespace

ForestModel train_forest(const TrainingSet& data, const ForestConfig& cfg, unsigned jobs,
                         std::vector<std::vector<std::uint32_t>>* inbag_counts) {
    if (data.rows() == 0) throw contract_error("train_forest: empty training set");
    if (cfg.n_trees < 1) throw contract_error("train_forest: n_trees must be positive");
    if (!(cfg.min_leaf_fraction > 0.0 && cfg.min_leaf_fraction < 0.5))
        throw contract_error("train_forest: min_leaf_fraction must lie in (0, 0.5)");
    require_both_classes(data);

    const std::vector<std::uint32_t> canonical = detail::canonical_order(data);
    const std::size_t n = data.rows();

    detail::ClassificationParams params;
    params.min_leaf_weight = std::ceil(cfg.min_leaf_fraction * static_cast<double>(n));
    if (params.min_leaf_weight < 1.0) params.min_leaf_weight = 1.0;
    params.features_per_split = cfg.features_per_split > 0
                                    ? cfg.features_per_split
                                    : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(data.cols))));

    ForestModel model;
    model.config = cfg;
    model.basis_digest = data.basis_digest;
    model.trees.resize(cfg.n_trees);
    if (inbag_counts) inbag_counts->assign(cfg.n_trees, {});

    parallel_for(static_cast<std::size_t>(cfg.n_trees), jobs, [&](std::size_t t) {
        Rng rng(derive_seed(cfg.seed, t));
        std::vector<double> weights(n, 0.0);
        std::vector<std::uint32_t> idx;
        if (cfg.bootstrap) {
            for (std::size_t d = 0; d < n; ++d) {
                std::uint32_t r = canonical[rng.index(n)];
                if (weights[r] == 0.0) idx.push_back(r);
                weights[r] += 1.0;
            }
            // Node scans iterate idx; keep it in canonical order so float
            // accumulation is independent of the draw order.
            std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
                return data.ids[a] < data.ids[b];
            });
        } else {
            idx = canonical;
            std::fill(weights.begin(), weights.end(), 1.0);
        }
        model.trees[t] = detail::build_classification_tree(data, std::move(idx), weights, params, rng);
        if (inbag_counts) {
            auto& counts = (*inbag_counts)[t];
            counts.assign(n, 0);
            for (std::size_t r = 0; r < n; ++r) counts[r] = static_cast<std::uint32_t>(weights[r]);
        }
    });
    return model;
}

double predict_forest_row(const ForestModel& model, std::span<const double> row) {
    double acc = 0.0;
    for (const auto& tree : model.trees) acc += tree.predict(row);
    return acc / static_cast<double>(model.trees.size());
}

double predict_forest(const ForestModel& model, const FeatureVector& f) {
    if (f.basis_digest != model.basis_digest)
        throw contract_error("featurization/model basis mismatch");
    return predict_forest_row(model, f.values);
}

}  // namespace rcc
