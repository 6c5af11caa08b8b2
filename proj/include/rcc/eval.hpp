#pragma once

#include <span>
#include <string>
#include <vector>

#include "rcc/data.hpp"

namespace rcc {

// Mann-Whitney AUC with midrank tie handling, O(n log n).
double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> positives);

// Mean of the AUCs of "XcausesY vs rest" on the scores and "YcausesX vs
// rest" on the negated scores.
double bidirectional_auc(std::span<const double> scores, std::span<const CausalLabel> labels);

struct PredictionRecord {
    std::string id;
    bool correct = false;
    double confidence = 0.5;  // in [0.5, 1]
    double weight = 1.0;
};

struct DecisionRateCurve {
    std::vector<double> rates;       // strictly increasing, in (0, 1]
    std::vector<double> accuracies;  // accuracy among the ceil(r*n) most confident pairs
    std::vector<std::size_t> n_selected;
    bool weights_used = false;
};

// Sorts by confidence descending (ties by id) and reports the
// weight-normalized accuracy of the top ceil(r*n) predictions at each rate.
DecisionRateCurve decision_rate_accuracy(std::vector<PredictionRecord> preds,
                                         std::span<const double> rates, bool use_weights);

inline std::vector<double> default_rate_grid() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}

// Smallest accuracy strictly above chance whose one-sided exact binomial
// test against 0.5 is significant at `alpha`; 1.0 when no achievable count
// is significant.
double significance_band(int n, double alpha = 0.05);

}  // namespace rcc
