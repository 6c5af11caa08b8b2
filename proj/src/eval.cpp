#include "rcc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcc/error.hpp"

namespace rcc {

double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> positives) {
    if (scores.size() != positives.size()) throw contract_error("roc_auc: size mismatch");
    const std::size_t n = scores.size();
    std::size_t pos = 0;
    for (auto f : positives) pos += f ? 1 : 0;
    const std::size_t neg = n - pos;
    if (pos == 0 || neg == 0) throw contract_error("roc_auc: need at least one positive and one negative");

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return scores[a] < scores[b]; });

    // Rank-sum with midranks for ties: AUC = (R_pos - P(P+1)/2) / (P*N).
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
        for (std::size_t t = i; t < j; ++t)
            if (positives[order[t]]) rank_sum_pos += midrank;
        i = j;
    }
    double p = static_cast<double>(pos);
    return (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

double bidirectional_auc(std::span<const double> scores, std::span<const CausalLabel> labels) {
    if (scores.size() != labels.size()) throw contract_error("bidirectional_auc: size mismatch");
    std::vector<std::uint8_t> is_xy(labels.size()), is_yx(labels.size());
    std::size_t nxy = 0, nyx = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        is_xy[i] = labels[i] == CausalLabel::XcausesY;
        is_yx[i] = labels[i] == CausalLabel::YcausesX;
        nxy += is_xy[i];
        nyx += is_yx[i];
    }
    if (nxy == 0 || nyx == 0)
        throw contract_error("bidirectional_auc: both causal classes must be present");
    std::vector<double> negated(scores.begin(), scores.end());
    for (double& s : negated) s = -s;
    return 0.5 * (roc_auc(scores, is_xy) + roc_auc(negated, is_yx));
}

DecisionRateCurve decision_rate_accuracy(std::vector<PredictionRecord> preds,
                                         std::span<const double> rates, bool use_weights) {
    if (preds.empty()) throw contract_error("decision_rate_accuracy: empty input");
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (!(rates[i] > 0.0 && rates[i] <= 1.0))
            throw contract_error("decision_rate_accuracy: rates must lie in (0, 1]");
        if (i > 0 && !(rates[i] > rates[i - 1]))
            throw contract_error("decision_rate_accuracy: rates must be strictly increasing");
    }
    for (const auto& p : preds)
        if (!(p.confidence >= 0.5 && p.confidence <= 1.0))
            throw contract_error("decision_rate_accuracy: confidence outside [0.5, 1]");

    std::sort(preds.begin(), preds.end(), [](const PredictionRecord& a, const PredictionRecord& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        return a.id < b.id;
    });

    DecisionRateCurve curve;
    curve.weights_used = use_weights;
    const std::size_t n = preds.size();
    for (double r : rates) {
        std::size_t k = static_cast<std::size_t>(std::ceil(r * static_cast<double>(n)));
        if (k == 0) k = 1;
        if (k > n) k = n;
        double wsum = 0.0, wcorrect = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double w = use_weights ? preds[i].weight : 1.0;
            wsum += w;
            if (preds[i].correct) wcorrect += w;
        }
        curve.rates.push_back(r);
        curve.accuracies.push_back(wsum > 0.0 ? wcorrect / wsum : 0.0);
        curve.n_selected.push_back(k);
    }
    return curve;
}

double significance_band(int n, double alpha) {
    if (n < 1) throw contract_error("significance_band: n must be >= 1");
    // One-sided exact binomial tail P(X >= k) for X ~ Bin(n, 1/2),
    // in log space for stability at large n.
    const double log_half_n = -static_cast<double>(n) * std::log(2.0);
    auto tail = [&](int k) {
        double sum = 0.0;
        for (int j = k; j <= n; ++j) {
            double logc = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
            sum += std::exp(logc + log_half_n);
        }
        return sum;
    };
    for (int k = n / 2 + 1; k <= n; ++k) {
        if (tail(k) < alpha) return static_cast<double>(k) / static_cast<double>(n);
    }
    return 1.0;
}

}  // namespace rcc
