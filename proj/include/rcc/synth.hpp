#pragma once

#include <cstdint>
#include <vector>

#include "rcc/data.hpp"
#include "rcc/rng.hpp"
#include "rcc/spline.hpp"

namespace rcc {

enum class PairKind { Causal, Independent, Confounded };

struct GMMParams {
    std::vector<double> weights;  // nonnegative, sum to 1
    std::vector<double> means;
    std::vector<double> stds;  // strictly positive
};

// Random spline mapping cause values to effect values: equispaced grid over
// the cause range, standard-normal knots, cubic interpolation in between and
// linear extension outside.
struct SplineMechanism {
    CubicSpline spline;

    double operator()(double t) const { return spline(t); }
    const std::vector<double>& grid() const { return spline.grid(); }
    const std::vector<double>& knots() const { return spline.values(); }
};

struct KindCounts {
    std::size_t causal = 0;
    std::size_t independent = 0;
    std::size_t confounded = 0;

    std::size_t total() const { return causal + independent + confounded; }
};

struct SynthConfig {
    int n_per_pair = 1000;
    KindCounts kinds;
    int components = 5;
    double hyper_scale = 5.0;  // variance of the N(0, 5) hyperprior on means/stds
    int knot_count = 10;
    double noise_var_min = 0.0;  // noise variance ~ U(min, max]
    double noise_var_max = 1.0;
    std::uint64_t seed = 0;
};

void validate_config(const SynthConfig& cfg);

// Mixture weights are normalized U(0,1) draws; means and stds come from the
// N(0, hyper_scale) hyperprior, stds by rejection to positive values.
GMMParams sample_gmm(const SynthConfig& cfg, Rng& rng);

// n GMM draws, standardized.
std::vector<double> draw_cause(const GMMParams& g, int n, Rng& rng);

SplineMechanism fit_mechanism(double x_min, double x_max, const SynthConfig& cfg, Rng& rng);

std::vector<double> apply_mechanism(const SplineMechanism& f, std::span<const double> x);

CausalPair generate_causal_pair(const SynthConfig& cfg, Rng& rng);
CausalPair generate_noncausal_pair(PairKind kind, const SynthConfig& cfg, Rng& rng);

// kinds.total() pairs (causal first, then independent, then confounded),
// each driven by a seed derived from (cfg.seed, index), then swap
// augmentation of the whole set. Deterministic for any job count.
PairCollection generate_dataset(const SynthConfig& cfg, unsigned jobs = 1);

}  // namespace rcc
