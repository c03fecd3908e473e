#include "madtradeoff/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace madt {

GridFunction::GridFunction(std::size_t m, std::vector<double> values)
    : values_(std::move(values)) {
    if (m < 2) throw std::invalid_argument("GridFunction: m must be >= 2");
    if (values_.size() != m)
        throw std::invalid_argument("GridFunction: values length != m");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFunction: non-finite value");
}

GridFunction GridFunction::zero(std::size_t m) {
    return GridFunction(m, std::vector<double>(m, 0.0));
}

GridFunction GridFunction::from_function(std::size_t m,
                                         const std::function<double(double)>& f) {
    std::vector<double> v(m);
    for (std::size_t j = 0; j < m; ++j)
        v[j] = f((static_cast<double>(j) + 0.5) / static_cast<double>(m));
    return GridFunction(m, std::move(v));
}

double GridFunction::value_at(double x) const {
    const std::size_t m = size();
    const double t = x * static_cast<double>(m) - 0.5;
    if (t <= 0.0) return values_.front();
    if (t >= static_cast<double>(m - 1)) return values_.back();
    const auto j = static_cast<std::size_t>(t);
    const double frac = t - static_cast<double>(j);
    return values_[j] + frac * (values_[j + 1] - values_[j]);
}

double GridFunction::l2_norm_sq() const {
    double sum = 0.0, comp = 0.0;
    for (double v : values_) {
        const double term = v * v;
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(size());
}

GridFunction GridFunction::resampled(std::size_t m) const {
    if (m == size()) return *this;
    std::vector<double> v(m);
    for (std::size_t j = 0; j < m; ++j)
        v[j] = value_at((static_cast<double>(j) + 0.5) / static_cast<double>(m));
    return GridFunction(m, std::move(v));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    if (!same_grid(a, b))
        throw std::invalid_argument("GridFunction: grid mismatch");
    const std::size_t m = a.size();
    std::vector<double> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = a[j] - b[j];
    return GridFunction(m, std::move(v));
}

GridFunction operator*(double s, const GridFunction& f) {
    const std::size_t m = f.size();
    std::vector<double> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = s * f[j];
    return GridFunction(m, std::move(v));
}

bool same_grid(const GridFunction& a, const GridFunction& b) {
    return a.size() == b.size();
}

} // namespace madt
