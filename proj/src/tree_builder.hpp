#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rcc/learn.hpp"
#include "rcc/rng.hpp"

namespace rcc::detail {

struct ClassificationParams {
    double min_leaf_weight = 1.0;
    int features_per_split = 1;
    double gain_eps = 1e-12;
};

struct RegressionParams {
    int max_depth = 3;
    int min_leaf_count = 1;
    double gain_eps = 1e-12;
};

DecisionTree build_classification_tree(const TrainingSet& data, std::vector<std::uint32_t> idx,
                                       std::span<const double> weights,
                                       const ClassificationParams& params, Rng& rng);

DecisionTree build_regression_tree(const TrainingSet& data, std::vector<std::uint32_t> idx,
                                   std::span<const double> grad, std::span<const double> hess,
                                   const RegressionParams& params);

// Row order sorted by id; makes sampling decisions a function of ids rather
// than row positions.
std::vector<std::uint32_t> canonical_order(const TrainingSet& data);

}  // namespace rcc::detail
