#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace madt {

// Function on [0,1] sampled at the m cell midpoints x_j = (j + 1/2)/m,
// piecewise-linear in between, constant beyond the first/last midpoint.
class GridFunction {
public:
    GridFunction(std::size_t m, std::vector<double> values);

    static GridFunction zero(std::size_t m);
    static GridFunction from_function(std::size_t m,
                                      const std::function<double(double)>& f);

    std::size_t size() const { return values_.size(); }
    double x(std::size_t j) const {
        return (static_cast<double>(j) + 0.5) / static_cast<double>(size());
    }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }

    // linear interpolation between midpoints
    double value_at(double x) const;

    // midpoint-rule quadrature of f^2 over [0,1]
    double l2_norm_sq() const;

    GridFunction resampled(std::size_t m) const;

    friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(double s, const GridFunction& f);

private:
    std::vector<double> values_;
};

bool same_grid(const GridFunction& a, const GridFunction& b);

} // namespace madt
