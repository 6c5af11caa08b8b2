#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rcc {

// Direction of the causal relationship in a pair. The numeric encoding is
// part of the file formats and must not change.
enum class CausalLabel : int {
    YcausesX = -1,
    NonCausal = 0,
    XcausesY = +1,
};

inline int label_value(CausalLabel l) { return static_cast<int>(l); }
CausalLabel label_from_value(int v);

// One sample set {(x_j, y_j)} with optional ground-truth label and weight.
struct CausalPair {
    std::string id;
    std::vector<double> x;
    std::vector<double> y;
    double weight = 1.0;
    std::optional<CausalLabel> label;

    std::size_t size() const { return x.size(); }
};

// Throws contract_error if the pair violates its invariants
// (len(x) == len(y) >= 2, finite entries, weight >= 0).
void validate_pair(const CausalPair& p);

struct PairCollection {
    std::vector<CausalPair> pairs;
    std::string provenance;
};

struct Standardized {
    std::vector<double> values;
    bool degenerate = false;  // input was constant; values are all zeros
};

// Shifts/scales to zero mean and unit population standard deviation.
// Constant input yields all zeros with the degenerate flag set.
Standardized standardize(std::span<const double> v);

// x/y exchanged, direction label negated (NonCausal unchanged), id suffixed
// "-swap". An involution on (x, y, label).
CausalPair swap_pair(const CausalPair& p);

// Originals in order, swapped copies appended.
PairCollection augment_with_swaps(const PairCollection& c);

// Plain-text pair file: one observation per line, whitespace-separated
// numeric columns, '#' comments allowed. Columns 1 and 2 are x and y; extra
// columns are ignored.
CausalPair load_pair_file(const std::filesystem::path& path);
void write_pair_file(const std::filesystem::path& path, const CausalPair& p);

// Loads every pair*.txt in dir (sorted by file name). A meta file, when
// given, has rows "id cause_col effect_col weight"; the six-column layout
// "id c_first c_last e_first e_last weight" used by public cause-effect
// corpora is accepted too. Rows whose columns are not (1,2) or (2,1) are
// skipped with a warning; (1,2) labels XcausesY, (2,1) YcausesX. A meta id
// with no matching file is an error. Files without a meta row stay
// unlabeled.
PairCollection load_collection(const std::filesystem::path& dir,
                               const std::optional<std::filesystem::path>& meta = std::nullopt,
                               unsigned jobs = 1);

}  // namespace rcc
