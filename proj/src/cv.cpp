#include <algorithm>
#include <numeric>

#include "rcc/error.hpp"
#include "rcc/eval.hpp"
#include "rcc/learn.hpp"
#include "rcc/parallel.hpp"
#include "tree_builder.hpp"

namespace rcc {

namespace {

// Per-class shuffle then round-robin assignment, keyed on canonical id
// order, so every fold carries both classes and the split is reproducible.
std::vector<int> stratified_folds(const TrainingSet& data, int k, std::uint64_t seed) {
    std::vector<std::uint32_t> canonical = detail::canonical_order(data);
    std::vector<int> fold(data.rows(), -1);
    for (int cls = 0; cls <= 1; ++cls) {
        std::vector<std::uint32_t> members;
        for (auto i : canonical)
            if (data.labels[i] == cls) members.push_back(i);
        if (members.size() < static_cast<std::size_t>(k))
            throw contract_error("cross_validate: a class has fewer members than folds");
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(cls)));
        for (std::size_t j = 0; j + 1 < members.size(); ++j)
            std::swap(members[j], members[j + rng.index(members.size() - j)]);
        for (std::size_t j = 0; j < members.size(); ++j)
            fold[members[j]] = static_cast<int>(j % static_cast<std::size_t>(k));
    }
    return fold;
}

TrainingSet subset(const TrainingSet& data, const std::vector<int>& fold, int f, bool keep) {
    TrainingSet out;
    out.cols = data.cols;
    out.basis_digest = data.basis_digest;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        if ((fold[i] == f) != keep) continue;
        out.ids.push_back(data.ids[i]);
        out.labels.push_back(data.labels[i]);
        auto r = data.row(i);
        out.features.insert(out.features.end(), r.begin(), r.end());
    }
    return out;
}

}  // namespace

std::vector<GBMConfig> default_gbm_grid(std::uint64_t seed) {
    std::vector<GBMConfig> grid;
    for (int rounds : {100, 300, 500})
        for (int depth : {3, 5})
            for (double lr : {0.05, 0.1}) {
                GBMConfig c;
                c.rounds = rounds;
                c.max_depth = depth;
                c.learning_rate = lr;
                c.seed = seed;
                grid.push_back(c);
            }
    return grid;
}

CVResult cross_validate(const TrainingSet& data, std::span<const GBMConfig> grid, int k,
                        std::uint64_t seed, unsigned jobs) {
    if (k < 2) throw contract_error("cross_validate: k must be >= 2");
    if (grid.empty()) throw contract_error("cross_validate: empty grid");
    if (data.rows() < static_cast<std::size_t>(k))
        throw contract_error("cross_validate: fewer rows than folds");

    const std::vector<int> fold = stratified_folds(data, k, seed);
    std::vector<TrainingSet> train_sets, valid_sets;
    for (int f = 0; f < k; ++f) {
        train_sets.push_back(subset(data, fold, f, false));
        valid_sets.push_back(subset(data, fold, f, true));
    }

    CVResult result;
    result.grid.assign(grid.begin(), grid.end());
    result.fold_aucs.assign(grid.size(), std::vector<double>(k, 0.0));

    parallel_for(grid.size() * static_cast<std::size_t>(k), jobs, [&](std::size_t job) {
        const std::size_t c = job / static_cast<std::size_t>(k);
        const int f = static_cast<int>(job % static_cast<std::size_t>(k));
        GBMModel model = train_gbm(train_sets[f], grid[c]);
        const TrainingSet& v = valid_sets[f];
        std::vector<double> scores(v.rows());
        for (std::size_t i = 0; i < v.rows(); ++i) scores[i] = predict_gbm_row(model, v.row(i));
        result.fold_aucs[c][f] = roc_auc(scores, v.labels);
    });

    result.mean_aucs.resize(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c)
        result.mean_aucs[c] =
            std::accumulate(result.fold_aucs[c].begin(), result.fold_aucs[c].end(), 0.0) / k;

    // argmax; ties prefer fewer rounds, then shallower trees, then larger
    // leaves, then grid order.
    std::size_t best = 0;
    for (std::size_t c = 1; c < grid.size(); ++c) {
        double d = result.mean_aucs[c] - result.mean_aucs[best];
        if (d > 0.0) {
            best = c;
        } else if (d == 0.0) {
            const GBMConfig& a = result.grid[c];
            const GBMConfig& b = result.grid[best];
            auto key = [](const GBMConfig& g) {
                return std::tuple(g.rounds, g.max_depth, -g.min_leaf_count);
            };
            if (key(a) < key(b)) best = c;
        }
    }
    result.best_index = best;
    return result;
}

}  // namespace rcc
