#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcc/data.hpp"

namespace rcc {

// Frozen random Fourier basis for the squared-exponential kernel
// k(x, x') = exp(-gamma * ||x - x'||^2). Frequencies are N(0, 2*gamma*I)
// draws, phases U[0, 2pi). The same (w1, b1) draw serves both marginal
// blocks so a swapped pair maps to block-swapped features exactly.
struct RFFBasis {
    double gamma = 10.0;
    int m = 300;  // total feature dimension, divisible by 3
    std::uint64_t seed = 0;
    std::vector<double> w1;                 // m/3 scalar frequencies (marginal blocks)
    std::vector<double> b1;                 // m/3 phases
    std::vector<std::array<double, 2>> w2;  // m/3 2-d frequencies (joint block)
    std::vector<double> b2;                 // m/3 phases

    int block_size() const { return m / 3; }
    // Stable 64-bit digest of (gamma, m, seed); recorded in feature and
    // model files to catch train/test basis mismatch.
    std::uint64_t digest() const;
};

RFFBasis sample_basis(double gamma, int m, std::uint64_t seed);

struct FeatureVector {
    std::vector<double> values;  // length m, every entry in [-1, 1]
    std::uint64_t basis_digest = 0;
};

// Component k is the empirical mean of cos(w_k * x_i + b_k).
std::vector<double> embed_block(std::span<const double> sample,
                                std::span<const double> w,
                                std::span<const double> b);
std::vector<double> embed_block(std::span<const double> xs,
                                std::span<const double> ys,
                                std::span<const std::array<double, 2>> w,
                                std::span<const double> b);

// Three concatenated blocks: marginal X, marginal Y, joint (X, Y).
// Standardizes x and y first unless pre_standardize is off.
FeatureVector featurize(const CausalPair& p, const RFFBasis& basis, bool pre_standardize = true);

// Monte-Carlo estimate of the squared-exponential kernel:
// (2/M) sum_k cos(w_k'x + b_k) cos(w_k'y + b_k), unbiased for
// exp(-gamma * ||x - y||^2). Validation utility.
double kernel_estimate(std::span<const double> x, std::span<const double> y,
                       double gamma, int M, std::uint64_t seed);

// Featurized collection plus everything needed to reproduce the basis.
struct FeatureTable {
    double gamma = 10.0;
    int m = 300;
    std::uint64_t seed = 0;
    std::uint64_t basis_digest = 0;
    bool standardized = true;
    std::vector<std::string> ids;
    std::vector<std::optional<CausalLabel>> labels;
    std::vector<double> weights;
    std::vector<double> values;  // row-major, rows() x m

    std::size_t rows() const { return ids.size(); }
    std::span<const double> row(std::size_t i) const {
        return {values.data() + i * static_cast<std::size_t>(m), static_cast<std::size_t>(m)};
    }
};

FeatureTable featurize_collection(const PairCollection& c, const RFFBasis& basis,
                                  bool pre_standardize = true, unsigned jobs = 1);

// Comma-separated matrix with a '#'-prefixed preamble carrying
// (gamma, m, seed, digest) and the header "id,label,weight,f0..f{m-1}".
// Doubles are written in shortest round-trip form.
void write_feature_table(const std::filesystem::path& path, const FeatureTable& t);
FeatureTable read_feature_table(const std::filesystem::path& path);

}  // namespace rcc
