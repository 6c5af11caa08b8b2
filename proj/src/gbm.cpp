#include <algorithm>
#include <cmath>

#include "rcc/error.hpp"
#include "rcc/learn.hpp"
#include "tree_builder.hpp"

namespace rcc {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void require_both_classes(const TrainingSet& data) {
    bool has0 = false, has1 = false;
    for (auto l : data.labels) (l ? has1 : has0) = true;
    if (!has0 || !has1) throw contract_error("training data contains a single class");
}

}  // namespace

double logistic_loss(std::span<const double> margins, std::span<const std::uint8_t> labels) {
    double loss = 0.0;
    for (std::size_t i = 0; i < margins.size(); ++i) {
        // -log p(y_i) written in a softplus form that is stable for large |F|
        double z = labels[i] ? margins[i] : -margins[i];
        loss += z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
    }
    return loss / static_cast<double>(margins.size());
}

GBMModel train_gbm(const TrainingSet& data, const GBMConfig& cfg) {
    if (data.rows() == 0) throw contract_error("train_gbm: empty training set");
    if (cfg.rounds < 0) throw contract_error("train_gbm: rounds must be >= 0");
    if (cfg.max_depth < 1) throw contract_error("train_gbm: max_depth must be positive");
    if (!(cfg.learning_rate > 0.0 && cfg.learning_rate <= 1.0))
        throw contract_error("train_gbm: learning_rate must lie in (0, 1]");
    if (cfg.min_leaf_count < 1) throw contract_error("train_gbm: min_leaf_count must be positive");
    if (!(cfg.subsample > 0.0 && cfg.subsample <= 1.0))
        throw contract_error("train_gbm: subsample must lie in (0, 1]");
    require_both_classes(data);

    const std::size_t n = data.rows();
    std::vector<std::uint32_t> canonical = detail::canonical_order(data);

    double pos = 0.0;
    for (auto l : data.labels) pos += l;
    const double neg = static_cast<double>(n) - pos;

    GBMModel model;
    model.config = cfg;
    model.learning_rate = cfg.learning_rate;
    model.basis_digest = data.basis_digest;
    model.prior_logodds = std::log(pos / neg);
    model.trees.reserve(cfg.rounds);

    detail::RegressionParams params;
    params.max_depth = cfg.max_depth;
    params.min_leaf_count = cfg.min_leaf_count;

    std::vector<double> margin(n, model.prior_logodds);
    std::vector<double> grad(n), hess(n);
    std::vector<std::uint32_t> pool = canonical;

    for (int round = 0; round < cfg.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            double p = sigmoid(margin[i]);
            grad[i] = static_cast<double>(data.labels[i]) - p;
            hess[i] = p * (1.0 - p);
        }
        std::vector<std::uint32_t> rows;
        if (cfg.subsample < 1.0) {
            Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(round)));
            std::size_t take = static_cast<std::size_t>(cfg.subsample * static_cast<double>(n));
            if (take < 2 * static_cast<std::size_t>(cfg.min_leaf_count))
                take = std::min(n, 2 * static_cast<std::size_t>(cfg.min_leaf_count));
            for (std::size_t j = 0; j < take; ++j)
                std::swap(pool[j], pool[j + rng.index(n - j)]);
            rows.assign(pool.begin(), pool.begin() + take);
            std::sort(rows.begin(), rows.end(), [&](std::uint32_t a, std::uint32_t b) {
                return data.ids[a] < data.ids[b];
            });
        } else {
            rows = canonical;
        }
        DecisionTree tree = detail::build_regression_tree(data, std::move(rows), grad, hess, params);
        for (std::size_t i = 0; i < n; ++i)
            margin[i] += cfg.learning_rate * tree.predict(data.row(i));
        model.trees.push_back(std::move(tree));
    }
    return model;
}

double predict_gbm_row(const GBMModel& model, std::span<const double> row) {
    double z = model.prior_logodds;
    for (const auto& tree : model.trees) z += model.learning_rate * tree.predict(row);
    double p = sigmoid(z);
    // keep the output strictly inside (0, 1)
    const double eps = 1e-15;
    return std::clamp(p, eps, 1.0 - eps);
}

double predict_gbm(const GBMModel& model, const FeatureVector& f) {
    if (f.basis_digest != model.basis_digest)
        throw contract_error("featurization/model basis mismatch");
    return predict_gbm_row(model, f.values);
}

}  // namespace rcc
