#include "rcc/error.hpp"
#include "rcc/learn.hpp"

namespace rcc {

namespace {

TrainingSet select_rows(const FeatureTable& t, bool causal_task) {
    TrainingSet out;
    out.cols = static_cast<std::size_t>(t.m);
    out.basis_digest = t.basis_digest;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (!t.labels[i]) continue;
        CausalLabel l = *t.labels[i];
        std::uint8_t y;
        if (causal_task) {
            y = l != CausalLabel::NonCausal;
        } else {
            if (l == CausalLabel::NonCausal) continue;
            y = l == CausalLabel::XcausesY;
        }
        out.ids.push_back(t.ids[i]);
        out.labels.push_back(y);
        auto r = t.row(i);
        out.features.insert(out.features.end(), r.begin(), r.end());
    }
    if (out.rows() == 0) throw contract_error("no labeled rows available for training");
    return out;
}

}  // namespace

TrainingSet make_direction_training(const FeatureTable& t) { return select_rows(t, false); }

TrainingSet make_causal_training(const FeatureTable& t) { return select_rows(t, true); }

}  // namespace rcc
