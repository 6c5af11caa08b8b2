#include "rcc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rcc/error.hpp"
#include "rcc/parallel.hpp"

namespace rcc {

void validate_config(const SynthConfig& cfg) {
    if (cfg.n_per_pair < 2) throw contract_error("synth: n_per_pair must be >= 2");
    if (cfg.components < 1) throw contract_error("synth: components must be positive");
    if (cfg.knot_count < 2) throw contract_error("synth: knot_count must be >= 2");
    if (!(cfg.hyper_scale > 0.0)) throw contract_error("synth: hyper_scale must be positive");
    if (cfg.noise_var_min < 0.0 || cfg.noise_var_max < cfg.noise_var_min)
        throw contract_error("synth: invalid noise variance range");
}

GMMParams sample_gmm(const SynthConfig& cfg, Rng& rng) {
    const int k = cfg.components;
    const double sd = std::sqrt(cfg.hyper_scale);
    GMMParams g;
    g.weights.resize(k);
    g.means.resize(k);
    g.stds.resize(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        g.weights[i] = rng.uniform();
        sum += g.weights[i];
    }
    if (sum <= 0.0) {
        std::fill(g.weights.begin(), g.weights.end(), 1.0 / k);
    } else {
        for (double& w : g.weights) w /= sum;
    }
    for (int i = 0; i < k; ++i) g.means[i] = sd * rng.normal();
    for (int i = 0; i < k; ++i) {
        double s;
        do {
            s = sd * rng.normal();
        } while (!(s > 0.0));
        g.stds[i] = s;
    }
    return g;
}

std::vector<double> draw_cause(const GMMParams& g, int n, Rng& rng) {
    if (n < 2) throw contract_error("draw_cause: need n >= 2");
    const std::size_t k = g.weights.size();
    std::vector<double> cum(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        acc += g.weights[i];
        cum[i] = acc;
    }
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) {
        double u = rng.uniform() * acc;
        std::size_t c = static_cast<std::size_t>(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        if (c >= k) c = k - 1;
        x[j] = g.means[c] + g.stds[c] * rng.normal();
    }
    return standardize(x).values;
}

SplineMechanism fit_mechanism(double x_min, double x_max, const SynthConfig& cfg, Rng& rng) {
    if (!(x_min < x_max)) throw contract_error("fit_mechanism: x_min must be < x_max");
    const int k = cfg.knot_count;
    std::vector<double> grid(k), knots(k);
    for (int i = 0; i < k; ++i)
        grid[i] = x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(k - 1);
    grid[k - 1] = x_max;
    for (int i = 0; i < k; ++i) knots[i] = rng.normal();
    return SplineMechanism{CubicSpline(std::move(grid), std::move(knots))};
}

std::vector<double> apply_mechanism(const SplineMechanism& f, std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
    return out;
}

namespace {

double sample_noise_variance(const SynthConfig& cfg, Rng& rng) {
    // U(min, max]: excludes the lower endpoint so U(0, 1] never yields
    // exactly zero variance.
    return cfg.noise_var_max - rng.uniform() * (cfg.noise_var_max - cfg.noise_var_min);
}

std::pair<double, double> value_range(std::span<const double> v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double a = *lo, b = *hi;
    if (!(a < b)) b = a + 1.0;  // degenerate draw; keep the mechanism well-defined
    return {a, b};
}

std::vector<double> add_noise_and_standardize(std::vector<double> fx, double noise_var, Rng& rng) {
    const double sd = std::sqrt(noise_var);
    for (double& v : fx) v += sd * rng.normal();
    return standardize(fx).values;
}

}  // namespace

CausalPair generate_causal_pair(const SynthConfig& cfg, Rng& rng) {
    GMMParams g = sample_gmm(cfg, rng);
    CausalPair p;
    p.x = draw_cause(g, cfg.n_per_pair, rng);
    auto [lo, hi] = value_range(p.x);
    SplineMechanism f = fit_mechanism(lo, hi, cfg, rng);
    double v = sample_noise_variance(cfg, rng);
    p.y = add_noise_and_standardize(apply_mechanism(f, p.x), v, rng);
    p.label = CausalLabel::XcausesY;
    return p;
}

CausalPair generate_noncausal_pair(PairKind kind, const SynthConfig& cfg, Rng& rng) {
    if (kind == PairKind::Causal) throw contract_error("generate_noncausal_pair: kind must not be Causal");
    CausalPair p;
    if (kind == PairKind::Independent) {
        GMMParams gx = sample_gmm(cfg, rng);
        p.x = draw_cause(gx, cfg.n_per_pair, rng);
        GMMParams gy = sample_gmm(cfg, rng);
        p.y = draw_cause(gy, cfg.n_per_pair, rng);
    } else {
        GMMParams gz = sample_gmm(cfg, rng);
        std::vector<double> z = draw_cause(gz, cfg.n_per_pair, rng);
        auto [lo, hi] = value_range(z);
        SplineMechanism f1 = fit_mechanism(lo, hi, cfg, rng);
        double v1 = sample_noise_variance(cfg, rng);
        p.x = add_noise_and_standardize(apply_mechanism(f1, z), v1, rng);
        SplineMechanism f2 = fit_mechanism(lo, hi, cfg, rng);
        double v2 = sample_noise_variance(cfg, rng);
        p.y = add_noise_and_standardize(apply_mechanism(f2, z), v2, rng);
    }
    p.label = CausalLabel::NonCausal;
    return p;
}

PairCollection generate_dataset(const SynthConfig& cfg, unsigned jobs) {
    validate_config(cfg);
    const std::size_t total = cfg.kinds.total();
    PairCollection out;
    out.provenance = "synth:seed=" + std::to_string(cfg.seed);
    out.pairs.resize(total);
    parallel_for(total, jobs, [&](std::size_t i) {
        Rng rng(derive_seed(cfg.seed, i));
        CausalPair p;
        if (i < cfg.kinds.causal)
            p = generate_causal_pair(cfg, rng);
        else if (i < cfg.kinds.causal + cfg.kinds.independent)
            p = generate_noncausal_pair(PairKind::Independent, cfg, rng);
        else
            p = generate_noncausal_pair(PairKind::Confounded, cfg, rng);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "pair%05zu", i + 1);
        p.id = buf;
        out.pairs[i] = std::move(p);
    });
    return augment_with_swaps(out);
}

}  // namespace rcc
