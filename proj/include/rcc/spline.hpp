#pragma once

#include <span>
#include <vector>

namespace rcc {

// Natural cubic interpolating spline on a strictly increasing grid, extended
// linearly beyond the grid so it is defined on all of R.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> grid, std::vector<double> values);

    double operator()(double t) const;

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

  private:
    std::vector<double> grid_;
    std::vector<double> values_;
    std::vector<double> m2_;  // second derivatives at the knots (natural: ends are 0)
    double slope_lo_ = 0.0;   // first derivatives at the boundary knots
    double slope_hi_ = 0.0;
};

}  // namespace rcc
