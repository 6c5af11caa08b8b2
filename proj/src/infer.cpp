#include "rcc/infer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcc/error.hpp"

namespace rcc {

double predict_proba(const Classifier& clf, const FeatureVector& f) {
    return std::visit(
        [&](const auto& model) -> double {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, ForestModel>)
                return predict_forest(model, f);
            else
                return predict_gbm(model, f);
        },
        clf);
}

std::uint64_t classifier_digest(const Classifier& clf) {
    return std::visit([](const auto& model) { return model.basis_digest; }, clf);
}

DirectionPrediction predict_direction(const DirectionModel& m, const CausalPair& p) {
    if (classifier_digest(m.classifier) != m.basis.digest())
        throw contract_error("direction model: classifier/basis digest mismatch");
    FeatureVector f = featurize(p, m.basis, m.standardize_inputs);
    DirectionPrediction out;
    out.prob_xy = predict_proba(m.classifier, f);
    out.confidence = std::max(out.prob_xy, 1.0 - out.prob_xy);
    return out;
}

CausationScore causation_coefficient(const CausationModel& m, const CausalPair& p) {
    const std::uint64_t digest = m.basis.digest();
    if (classifier_digest(m.clf_causal) != digest || classifier_digest(m.clf_direction) != digest)
        throw contract_error("causation model: sub-models disagree on the basis");
    FeatureVector f = featurize(p, m.basis, m.standardize_inputs);
    CausationScore s;
    s.p1 = predict_proba(m.clf_causal, f);
    s.p2 = predict_proba(m.clf_direction, f);
    s.score = s.p1 * (2.0 * s.p2 - 1.0);
    return s;
}

namespace {

std::size_t count_distinct(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

std::vector<double> rescale_unit(const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double span = *hi - *lo;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / span;
    return out;
}

// Normalized sum of log |dv/du| over lexicographically sorted (u, v) points,
// using only steps with du > 0 and dv != 0.
double directed_slope_sum(const std::vector<double>& u, const std::vector<double>& v) {
    const std::size_t n = u.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (u[a] != u[b]) return u[a] < u[b];
        return v[a] < v[b];
    });
    double sum = 0.0;
    std::size_t steps = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double du = u[order[i + 1]] - u[order[i]];
        double dv = v[order[i + 1]] - v[order[i]];
        if (!(du > 0.0) || dv == 0.0) continue;
        sum += std::log(std::abs(dv / du));
        ++steps;
    }
    if (steps < 2) throw contract_error("igci: no usable slope steps");
    return sum / static_cast<double>(steps - 1);
}

}  // namespace

IGCISlopes igci_slope_score(const CausalPair& p) {
    validate_pair(p);
    if (count_distinct(p.x) < 3 || count_distinct(p.y) < 3)
        throw contract_error("igci: too few distinct values");
    std::vector<double> u = rescale_unit(p.x);
    std::vector<double> v = rescale_unit(p.y);
    IGCISlopes s;
    s.s_xy = directed_slope_sum(u, v);
    s.s_yx = directed_slope_sum(v, u);
    return s;
}

IGCIDecision igci_decide(const CausalPair& p, double margin) {
    if (margin < 0.0) throw contract_error("igci: margin must be nonnegative");
    IGCISlopes s = igci_slope_score(p);
    IGCIDecision d;
    d.s_xy = s.s_xy;
    d.s_yx = s.s_yx;
    if (s.s_xy < s.s_yx - margin)
        d.value = IGCIDirection::XtoY;
    else if (s.s_yx < s.s_xy - margin)
        d.value = IGCIDirection::YtoX;
    else
        d.value = IGCIDirection::Abstain;
    return d;
}

const char* to_string(IGCIDirection d) {
    switch (d) {
        case IGCIDirection::XtoY: return "XtoY";
        case IGCIDirection::YtoX: return "YtoX";
        case IGCIDirection::Abstain: return "Abstain";
    }
    return "Abstain";
}

}  // namespace rcc
