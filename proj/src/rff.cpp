#include "rcc/rff.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rcc/error.hpp"
#include "rcc/parallel.hpp"
#include "rcc/rng.hpp"

namespace rcc {

std::uint64_t RFFBasis::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = hash_mix(h, gamma);
    h = hash_mix(h, static_cast<std::uint64_t>(m));
    h = hash_mix(h, seed);
    return h;
}

RFFBasis sample_basis(double gamma, int m, std::uint64_t seed) {
    if (m <= 0 || m % 3 != 0) throw contract_error("basis dimension must be a positive multiple of 3");
    if (!(gamma > 0.0)) throw contract_error("gamma must be positive");
    RFFBasis basis;
    basis.gamma = gamma;
    basis.m = m;
    basis.seed = seed;
    const int k = m / 3;
    const double sd = std::sqrt(2.0 * gamma);  // frequency scale for exp(-gamma d^2)
    Rng rng(derive_seed(seed, 0));
    basis.w1.resize(k);
    basis.b1.resize(k);
    basis.w2.resize(k);
    basis.b2.resize(k);
    for (int i = 0; i < k; ++i) basis.w1[i] = sd * rng.normal();
    for (int i = 0; i < k; ++i) basis.b1[i] = rng.uniform(0.0, 2.0 * M_PI);
    for (int i = 0; i < k; ++i) basis.w2[i] = {sd * rng.normal(), sd * rng.normal()};
    for (int i = 0; i < k; ++i) basis.b2[i] = rng.uniform(0.0, 2.0 * M_PI);
    return basis;
}

std::vector<double> embed_block(std::span<const double> sample,
                                std::span<const double> w,
                                std::span<const double> b) {
    if (sample.empty()) throw contract_error("embed_block: empty sample");
    if (w.size() != b.size()) throw contract_error("embed_block: |w| != |b|");
    std::vector<double> out(w.size());
    const double inv_n = 1.0 / static_cast<double>(sample.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        double acc = 0.0;
        for (double x : sample) acc += std::cos(w[k] * x + b[k]);
        out[k] = acc * inv_n;
    }
    return out;
}

std::vector<double> embed_block(std::span<const double> xs,
                                std::span<const double> ys,
                                std::span<const std::array<double, 2>> w,
                                std::span<const double> b) {
    if (xs.empty()) throw contract_error("embed_block: empty sample");
    if (xs.size() != ys.size()) throw contract_error("embed_block: coordinate lengths differ");
    if (w.size() != b.size()) throw contract_error("embed_block: |w| != |b|");
    std::vector<double> out(w.size());
    const double inv_n = 1.0 / static_cast<double>(xs.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < xs.size(); ++j)
            acc += std::cos(w[k][0] * xs[j] + w[k][1] * ys[j] + b[k]);
        out[k] = acc * inv_n;
    }
    return out;
}

FeatureVector featurize(const CausalPair& p, const RFFBasis& basis, bool pre_standardize) {
    validate_pair(p);
    FeatureVector fv;
    fv.basis_digest = basis.digest();
    fv.values.reserve(basis.m);
    const std::vector<double>* xs = &p.x;
    const std::vector<double>* ys = &p.y;
    Standardized sx, sy;
    if (pre_standardize) {
        sx = standardize(p.x);
        sy = standardize(p.y);
        xs = &sx.values;
        ys = &sy.values;
    }
    auto bx = embed_block(*xs, basis.w1, basis.b1);
    auto by = embed_block(*ys, basis.w1, basis.b1);
    auto bxy = embed_block(*xs, *ys, basis.w2, basis.b2);
    fv.values.insert(fv.values.end(), bx.begin(), bx.end());
    fv.values.insert(fv.values.end(), by.begin(), by.end());
    fv.values.insert(fv.values.end(), bxy.begin(), bxy.end());
    return fv;
}

double kernel_estimate(std::span<const double> x, std::span<const double> y,
                       double gamma, int M, std::uint64_t seed) {
    if (x.size() != y.size()) throw contract_error("kernel_estimate: dimension mismatch");
    if (M < 1) throw contract_error("kernel_estimate: M must be >= 1");
    if (!(gamma > 0.0)) throw contract_error("kernel_estimate: gamma must be positive");
    const double sd = std::sqrt(2.0 * gamma);
    Rng rng(derive_seed(seed, 0));
    const std::size_t d = x.size();
    std::vector<double> w(d);
    double acc = 0.0;
    for (int k = 0; k < M; ++k) {
        for (std::size_t i = 0; i < d; ++i) w[i] = sd * rng.normal();
        double b = rng.uniform(0.0, 2.0 * M_PI);
        double wx = b, wy = b;
        for (std::size_t i = 0; i < d; ++i) {
            wx += w[i] * x[i];
            wy += w[i] * y[i];
        }
        acc += std::cos(wx) * std::cos(wy);
    }
    return 2.0 * acc / static_cast<double>(M);  // the 2/M factor makes the estimate unbiased
}

FeatureTable featurize_collection(const PairCollection& c, const RFFBasis& basis,
                                  bool pre_standardize, unsigned jobs) {
    FeatureTable t;
    t.gamma = basis.gamma;
    t.m = basis.m;
    t.seed = basis.seed;
    t.basis_digest = basis.digest();
    t.standardized = pre_standardize;
    const std::size_t n = c.pairs.size();
    t.ids.resize(n);
    t.labels.resize(n);
    t.weights.resize(n);
    t.values.resize(n * static_cast<std::size_t>(basis.m));
    std::vector<std::string> errors(n);
    parallel_for(n, jobs, [&](std::size_t i) {
        try {
            const CausalPair& p = c.pairs[i];
            t.ids[i] = p.id;
            t.labels[i] = p.label;
            t.weights[i] = p.weight;
            FeatureVector fv = featurize(p, basis, pre_standardize);
            std::copy(fv.values.begin(), fv.values.end(),
                      t.values.begin() + i * static_cast<std::size_t>(basis.m));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw contract_error(e);
    return t;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, r.ptr);
}

double parse_double_tok(const std::string& s, const char* what) {
    double v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw contract_error(std::string("feature file: bad ") + what + " '" + s + "'");
    return v;
}

}  // namespace

void write_feature_table(const std::filesystem::path& path, const FeatureTable& t) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write feature file: " + path.string());
    std::string head = "# rcc-features version=1\n# gamma=";
    append_double(head, t.gamma);
    head += " m=" + std::to_string(t.m) + " seed=" + std::to_string(t.seed);
    char dig[32];
    std::snprintf(dig, sizeof(dig), "%016llx", static_cast<unsigned long long>(t.basis_digest));
    head += " digest=";
    head += dig;
    head += " standardized=";
    head += t.standardized ? '1' : '0';
    head += "\nid,label,weight";
    for (int j = 0; j < t.m; ++j) head += ",f" + std::to_string(j);
    head += '\n';
    out << head;
    std::string line;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        line.clear();
        line += t.ids[i];
        line += ',';
        if (t.labels[i]) line += std::to_string(label_value(*t.labels[i]));
        line += ',';
        append_double(line, t.weights[i]);
        auto r = t.row(i);
        for (double v : r) {
            line += ',';
            append_double(line, v);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw io_error("write failed: " + path.string());
}

FeatureTable read_feature_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open feature file: " + path.string());
    FeatureTable t;
    std::string line;
    bool have_meta = false, have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "gamma") t.gamma = std::strtod(val.c_str(), nullptr);
                else if (key == "m") t.m = std::stoi(val);
                else if (key == "seed") t.seed = std::stoull(val);
                else if (key == "digest") t.basis_digest = std::stoull(val, nullptr, 16);
                else if (key == "standardized") t.standardized = val != "0";
                have_meta = true;
            }
            continue;
        }
        if (!have_header) {
            if (line.rfind("id,label,weight", 0) != 0)
                throw contract_error(path.string() + ": missing feature header");
            have_header = true;
            continue;
        }
        // data row: id,label,weight,f0..f{m-1}
        std::vector<std::string> cells;
        cells.reserve(static_cast<std::size_t>(t.m) + 3);
        std::size_t pos = 0;
        while (true) {
            auto comma = line.find(',', pos);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (cells.size() != static_cast<std::size_t>(t.m) + 3)
            throw contract_error(path.string() + ": row '" + cells[0] + "' has wrong column count");
        t.ids.push_back(cells[0]);
        if (cells[1].empty())
            t.labels.push_back(std::nullopt);
        else
            t.labels.push_back(label_from_value(static_cast<int>(parse_double_tok(cells[1], "label"))));
        t.weights.push_back(parse_double_tok(cells[2], "weight"));
        for (int j = 0; j < t.m; ++j) t.values.push_back(parse_double_tok(cells[3 + j], "feature"));
    }
    if (!have_meta || !have_header) throw contract_error(path.string() + ": not a feature file");
    return t;
}

}  // namespace rcc
