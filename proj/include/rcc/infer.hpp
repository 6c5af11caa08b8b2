#pragma once

#include <variant>

#include "rcc/data.hpp"
#include "rcc/learn.hpp"
#include "rcc/rff.hpp"

namespace rcc {

using Classifier = std::variant<ForestModel, GBMModel>;

double predict_proba(const Classifier& clf, const FeatureVector& f);
std::uint64_t classifier_digest(const Classifier& clf);

// Direction-only model: class 1 of the classifier means XcausesY.
struct DirectionModel {
    RFFBasis basis;
    Classifier classifier;
    bool standardize_inputs = true;
};

// Two-classifier model: clf_causal separates causal from non-causal pairs,
// clf_direction separates the two causal directions (trained on causal
// pairs only).
struct CausationModel {
    RFFBasis basis;
    Classifier clf_causal;
    Classifier clf_direction;
    bool standardize_inputs = true;
};

struct DirectionPrediction {
    double prob_xy = 0.5;
    double confidence = 0.5;  // max(prob_xy, 1 - prob_xy), in [0.5, 1]
};

DirectionPrediction predict_direction(const DirectionModel& m, const CausalPair& p);

// Signed score p1 * (2*p2 - 1) in [-1, 1]: p1 is the causal probability,
// p2 the probability of XcausesY.
struct CausationScore {
    double score = 0.0;
    double p1 = 0.0;
    double p2 = 0.5;
};

CausationScore causation_coefficient(const CausationModel& m, const CausalPair& p);

enum class IGCIDirection { XtoY, YtoX, Abstain };

struct IGCISlopes {
    double s_xy = 0.0;
    double s_yx = 0.0;
};

struct IGCIDecision {
    IGCIDirection value = IGCIDirection::Abstain;
    double s_xy = 0.0;
    double s_yx = 0.0;
};

// Slope-based scores under the uniform reference measure: both variables
// are rescaled to [0, 1], the points sorted lexicographically, and
// s_xy = mean-normalized sum of log |dy/dx| over steps with dx > 0 and
// dy != 0 (zero-slope steps are skipped). Lower score indicates the cause.
IGCISlopes igci_slope_score(const CausalPair& p);

// XtoY when s_xy < s_yx - margin, YtoX for the mirrored inequality,
// Abstain otherwise.
IGCIDecision igci_decide(const CausalPair& p, double margin = 0.0);

const char* to_string(IGCIDirection d);

}  // namespace rcc
