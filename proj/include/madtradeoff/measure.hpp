#pragma once

#include <string>
#include <vector>

#include "madtradeoff/grid.hpp"

namespace madt {

// Finite probability measure on an ordered set of labeled atoms. Paired
// measures share the atom sequence by index; the dominating measure is the
// implicit counting measure on that set.
class DiscreteMeasure {
public:
    DiscreteMeasure(std::vector<std::string> atoms, std::vector<double> probs);

    // atoms labeled "0", "1", ...
    static DiscreteMeasure from_weights(std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::vector<double>& probs() const { return probs_; }
    double operator[](std::size_t j) const { return probs_[j]; }

private:
    std::vector<std::string> atoms_;
    std::vector<double> probs_;
};

bool same_atoms(const DiscreteMeasure& a, const DiscreteMeasure& b);
void require_same_atoms(const DiscreteMeasure& a, const DiscreteMeasure& b);

// Real value per atom; aligned by index with a DiscreteMeasure.
struct FiniteRV {
    std::vector<double> values;

    static FiniteRV constant(std::size_t size, double c) {
        return FiniteRV{std::vector<double>(size, c)};
    }
    std::size_t size() const { return values.size(); }
};

void require_aligned(const DiscreteMeasure& p, const FiniteRV& x);

struct DivergenceReport {
    double hellinger_sq = 0.0;
    double lr_min_norm = 0.0;  // max_j |p_j - q_j| / min(p_j, q_j), 0/0 := 0
    double lr_max_norm = 0.0;  // max_j |p_j - q_j| / max(p_j, q_j), 0/0 := 0
};

// exact weighted sums with compensated accumulation
double expectation(const DiscreteMeasure& p, const FiniteRV& x);
double abs_deviation(const DiscreteMeasure& p, const FiniteRV& x, double center);
double variance(const DiscreteMeasure& p, const FiniteRV& x);

// 1 - sum_j sqrt(p_j q_j), clamped to [0,1]
double hellinger_sq_discrete(const DiscreteMeasure& p, const DiscreteMeasure& q);

// 1 - exp(-delta^2/8) for N(theta,1) vs N(theta+delta,1)
double hellinger_sq_gaussian_location(double delta);

// 1 - exp(-(n/8)||f-g||_2^2), grid quadrature for the L2 norm
double hellinger_sq_gwn(const GridFunction& f, const GridFunction& g, double n);

// independent coordinates with common variance
double hellinger_sq_product_gaussian(const std::vector<double>& means1,
                                     const std::vector<double>& means2,
                                     double variance);

DivergenceReport lr_ratio_norms(const DiscreteMeasure& p, const DiscreteMeasure& q);

} // namespace madt
