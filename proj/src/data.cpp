#include "rcc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "rcc/error.hpp"
#include "rcc/parallel.hpp"

namespace rcc {

namespace fs = std::filesystem;

CausalLabel label_from_value(int v) {
    switch (v) {
        case -1: return CausalLabel::YcausesX;
        case 0: return CausalLabel::NonCausal;
        case 1: return CausalLabel::XcausesY;
        default: throw contract_error("invalid label value " + std::to_string(v));
    }
}

void validate_pair(const CausalPair& p) {
    if (p.x.size() != p.y.size())
        throw contract_error("pair '" + p.id + "': x and y lengths differ");
    if (p.x.size() < 2)
        throw contract_error("pair '" + p.id + "': too few samples");
    for (double v : p.x)
        if (!std::isfinite(v)) throw contract_error("pair '" + p.id + "': non-finite x value");
    for (double v : p.y)
        if (!std::isfinite(v)) throw contract_error("pair '" + p.id + "': non-finite y value");
    if (!(p.weight >= 0.0))
        throw contract_error("pair '" + p.id + "': negative weight");
}

Standardized standardize(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n < 2) throw contract_error("standardize: need at least 2 values");
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n);  // population variance
    Standardized out;
    out.values.resize(n);
    if (var <= 0.0) {
        out.degenerate = true;
        std::fill(out.values.begin(), out.values.end(), 0.0);
        return out;
    }
    const double inv_sd = 1.0 / std::sqrt(var);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = (v[i] - mean) * inv_sd;
    return out;
}

CausalPair swap_pair(const CausalPair& p) {
    CausalPair q;
    q.id = p.id + "-swap";
    q.x = p.y;
    q.y = p.x;
    q.weight = p.weight;
    if (p.label) {
        switch (*p.label) {
            case CausalLabel::XcausesY: q.label = CausalLabel::YcausesX; break;
            case CausalLabel::YcausesX: q.label = CausalLabel::XcausesY; break;
            case CausalLabel::NonCausal: q.label = CausalLabel::NonCausal; break;
        }
    }
    return q;
}

PairCollection augment_with_swaps(const PairCollection& c) {
    PairCollection out;
    out.provenance = c.provenance;
    out.pairs.reserve(c.pairs.size() * 2);
    out.pairs = c.pairs;
    for (const auto& p : c.pairs) out.pairs.push_back(swap_pair(p));
    return out;
}

namespace {

bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec == std::errc() && ptr == last) return true;
    // from_chars does not accept leading '+'; fall back to strtod for those.
    char* end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size() && !tok.empty();
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

}  // namespace

CausalPair load_pair_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open pair file: " + path.string());
    CausalPair p;
    p.id = path.stem().string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        auto toks = split_ws(line);
        if (toks.size() < 2)
            throw contract_error(path.string() + ":" + std::to_string(lineno) + ": expected at least 2 columns");
        double xv, yv;
        if (!parse_double(toks[0], xv) || !parse_double(toks[1], yv))
            throw contract_error(path.string() + ":" + std::to_string(lineno) + ": non-numeric token");
        if (!std::isfinite(xv) || !std::isfinite(yv))
            throw contract_error(path.string() + ":" + std::to_string(lineno) + ": non-finite value");
        p.x.push_back(xv);
        p.y.push_back(yv);
    }
    if (p.x.size() < 2) throw contract_error(path.string() + ": too few samples");
    return p;
}

void write_pair_file(const fs::path& path, const CausalPair& p) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write pair file: " + path.string());
    char buf[64];
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        auto r1 = std::to_chars(buf, buf + sizeof(buf), p.x[i]);
        out.write(buf, r1.ptr - buf);
        out.put(' ');
        auto r2 = std::to_chars(buf, buf + sizeof(buf), p.y[i]);
        out.write(buf, r2.ptr - buf);
        out.put('\n');
    }
    if (!out) throw io_error("write failed: " + path.string());
}

namespace {

struct MetaRow {
    int cause_col = 0;
    int effect_col = 0;
    double weight = 1.0;
};

// Accepts the 4-column rows "id cause_col effect_col weight" and the
// 6-column corpus layout "id c_first c_last e_first e_last weight".
std::unordered_map<std::string, MetaRow> load_meta(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open meta file: " + path.string());
    std::unordered_map<std::string, MetaRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        auto toks = split_ws(line);
        auto col = [&](std::size_t i) {
            double v;
            if (!parse_double(toks[i], v))
                throw contract_error(path.string() + ":" + std::to_string(lineno) + ": non-numeric meta field");
            return v;
        };
        MetaRow row;
        if (toks.size() == 4) {
            row.cause_col = static_cast<int>(col(1));
            row.effect_col = static_cast<int>(col(2));
            row.weight = col(3);
        } else if (toks.size() >= 6) {
            int cf = static_cast<int>(col(1)), cl = static_cast<int>(col(2));
            int ef = static_cast<int>(col(3)), el = static_cast<int>(col(4));
            row.weight = col(5);
            if (cf != cl || ef != el) {
                std::cerr << "warning: skipping multivariate meta row '" << toks[0] << "'\n";
                continue;
            }
            row.cause_col = cf;
            row.effect_col = ef;
        } else {
            throw contract_error(path.string() + ":" + std::to_string(lineno) + ": expected 4 or 6 meta columns");
        }
        bool fwd = row.cause_col == 1 && row.effect_col == 2;
        bool rev = row.cause_col == 2 && row.effect_col == 1;
        if (!fwd && !rev) {
            std::cerr << "warning: skipping meta row '" << toks[0] << "' with columns ("
                      << row.cause_col << "," << row.effect_col << ")\n";
            continue;
        }
        rows[toks[0]] = row;
    }
    return rows;
}

}  // namespace

PairCollection load_collection(const fs::path& dir, const std::optional<fs::path>& meta, unsigned jobs) {
    if (!fs::is_directory(dir)) throw io_error("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const std::string name = e.path().filename().string();
        if (name.rfind("pair", 0) == 0 && e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());

    PairCollection out;
    out.provenance = dir.string();
    out.pairs.resize(files.size());
    std::vector<std::string> errors(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) {
        try {
            out.pairs[i] = load_pair_file(files[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw contract_error(e);

    if (meta) {
        auto rows = load_meta(*meta);
        std::unordered_map<std::string, std::size_t> by_id;
        for (std::size_t i = 0; i < out.pairs.size(); ++i) by_id[out.pairs[i].id] = i;
        for (const auto& [id, row] : rows) {
            auto it = by_id.find(id);
            if (it == by_id.end()) it = by_id.find("pair" + id);
            if (it == by_id.end())
                throw contract_error("meta id '" + id + "' has no matching pair file in " + dir.string());
            CausalPair& p = out.pairs[it->second];
            p.label = row.cause_col == 1 ? CausalLabel::XcausesY : CausalLabel::YcausesX;
            p.weight = row.weight;
        }
    }
    return out;
}

}  // namespace rcc
