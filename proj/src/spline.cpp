#include "rcc/spline.hpp"

#include <algorithm>
#include <cstddef>

#include "rcc/error.hpp"

namespace rcc {

CubicSpline::CubicSpline(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    const std::size_t n = grid_.size();
    if (n < 2) throw contract_error("spline needs at least 2 knots");
    if (values_.size() != n) throw contract_error("spline: grid/value size mismatch");
    for (std::size_t i = 1; i < n; ++i)
        if (!(grid_[i] > grid_[i - 1])) throw contract_error("spline grid must be strictly increasing");

    // Tridiagonal system for the interior second derivatives, natural ends.
    m2_.assign(n, 0.0);
    if (n > 2) {
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h0 = grid_[i] - grid_[i - 1];
            double h1 = grid_[i + 1] - grid_[i];
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((values_[i + 1] - values_[i]) / h1 - (values_[i] - values_[i - 1]) / h0);
        }
        // Thomas algorithm over i = 1..n-2; lower diagonal at row i is h0.
        for (std::size_t i = 2; i + 1 < n; ++i) {
            double h0 = grid_[i] - grid_[i - 1];
            double w = h0 / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m2_[i] = (rhs[i] - upper[i] * m2_[i + 1]) / diag[i];  // m2_[n-1] stays 0
            if (i == 1) break;
        }
    }

    const double h_lo = grid_[1] - grid_[0];
    slope_lo_ = (values_[1] - values_[0]) / h_lo - h_lo * (2.0 * m2_[0] + m2_[1]) / 6.0;
    const double h_hi = grid_[n - 1] - grid_[n - 2];
    slope_hi_ = (values_[n - 1] - values_[n - 2]) / h_hi + h_hi * (m2_[n - 2] + 2.0 * m2_[n - 1]) / 6.0;
}

double CubicSpline::operator()(double t) const {
    const std::size_t n = grid_.size();
    if (t <= grid_.front()) return values_.front() + slope_lo_ * (t - grid_.front());
    if (t >= grid_.back()) return values_.back() + slope_hi_ * (t - grid_.back());
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    if (i >= n - 1) i = n - 2;
    double h = grid_[i + 1] - grid_[i];
    double a = (grid_[i + 1] - t) / h;
    double b = (t - grid_[i]) / h;
    return a * values_[i] + b * values_[i + 1] +
           ((a * a * a - a) * m2_[i] + (b * b * b - b) * m2_[i + 1]) * h * h / 6.0;
}

}  // namespace rcc
