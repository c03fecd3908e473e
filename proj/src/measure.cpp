#include "madtradeoff/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace madt {

namespace {

// Neumaier variant of Kahan summation
double compensated_sum(const std::vector<double>& terms) {
    double sum = 0.0, comp = 0.0;
    for (double term : terms) {
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double weighted_sum(const std::vector<double>& w,
                    const std::vector<double>& v,
                    const std::function<double(double)>& transform) {
    std::vector<double> terms(w.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        terms[j] = w[j] * transform(v[j]);
    return compensated_sum(terms);
}

} // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<std::string> atoms,
                                 std::vector<double> probs)
    : atoms_(std::move(atoms)), probs_(std::move(probs)) {
    if (atoms_.size() != probs_.size())
        throw std::invalid_argument("DiscreteMeasure: atoms/probs length mismatch");
    if (probs_.empty())
        throw std::invalid_argument("DiscreteMeasure: empty measure");
    std::unordered_set<std::string> seen;
    for (const auto& a : atoms_)
        if (!seen.insert(a).second)
            throw std::invalid_argument("DiscreteMeasure: duplicate atom '" + a + "'");
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0))
            throw std::invalid_argument("DiscreteMeasure: negative weight");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw std::invalid_argument("DiscreteMeasure: weights sum to " +
                                    std::to_string(total) + ", expected 1");
    // renormalize exactly once
    for (double& p : probs_) p /= total;
}

DiscreteMeasure DiscreteMeasure::from_weights(std::vector<double> probs) {
    std::vector<std::string> atoms(probs.size());
    for (std::size_t j = 0; j < atoms.size(); ++j) atoms[j] = std::to_string(j);
    return DiscreteMeasure(std::move(atoms), std::move(probs));
}

bool same_atoms(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return a.atoms() == b.atoms();
}

void require_same_atoms(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (!same_atoms(a, b))
        throw std::invalid_argument("measures do not share an atom sequence");
}

void require_aligned(const DiscreteMeasure& p, const FiniteRV& x) {
    if (p.size() != x.size())
        throw std::invalid_argument("random variable not aligned with measure");
}

double expectation(const DiscreteMeasure& p, const FiniteRV& x) {
    require_aligned(p, x);
    return weighted_sum(p.probs(), x.values, [](double v) { return v; });
}

double abs_deviation(const DiscreteMeasure& p, const FiniteRV& x, double center) {
    require_aligned(p, x);
    return weighted_sum(p.probs(), x.values,
                        [center](double v) { return std::fabs(v - center); });
}

double variance(const DiscreteMeasure& p, const FiniteRV& x) {
    const double mean = expectation(p, x);
    const double v = weighted_sum(p.probs(), x.values, [mean](double t) {
        const double d = t - mean;
        return d * d;
    });
    return std::max(0.0, v);
}

double hellinger_sq_discrete(const DiscreteMeasure& p, const DiscreteMeasure& q) {
    require_same_atoms(p, q);
    std::vector<double> terms(p.size());
    for (std::size_t j = 0; j < p.size(); ++j)
        terms[j] = std::sqrt(p[j] * q[j]);
    const double h2 = 1.0 - compensated_sum(terms);
    return std::clamp(h2, 0.0, 1.0);
}

double hellinger_sq_gaussian_location(double delta) {
    return std::clamp(1.0 - std::exp(-delta * delta / 8.0), 0.0, 1.0);
}

double hellinger_sq_gwn(const GridFunction& f, const GridFunction& g, double n) {
    if (!same_grid(f, g))
        throw std::invalid_argument("hellinger_sq_gwn: grid mismatch");
    if (!(n > 0.0))
        throw std::invalid_argument("hellinger_sq_gwn: n must be positive");
    const double dist_sq = (f - g).l2_norm_sq();
    return std::clamp(1.0 - std::exp(-n / 8.0 * dist_sq), 0.0, 1.0);
}

double hellinger_sq_product_gaussian(const std::vector<double>& means1,
                                     const std::vector<double>& means2,
                                     double variance) {
    if (means1.size() != means2.size())
        throw std::invalid_argument("hellinger_sq_product_gaussian: length mismatch");
    if (!(variance > 0.0))
        throw std::invalid_argument("hellinger_sq_product_gaussian: variance <= 0");
    std::vector<double> terms(means1.size());
    for (std::size_t j = 0; j < means1.size(); ++j) {
        const double d = means1[j] - means2[j];
        terms[j] = d * d;
    }
    const double exponent = compensated_sum(terms) / (8.0 * variance);
    return std::clamp(1.0 - std::exp(-exponent), 0.0, 1.0);
}

DivergenceReport lr_ratio_norms(const DiscreteMeasure& p, const DiscreteMeasure& q) {
    require_same_atoms(p, q);
    DivergenceReport rep;
    rep.hellinger_sq = hellinger_sq_discrete(p, q);
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double diff = std::fabs(p[j] - q[j]);
        const double lo = std::min(p[j], q[j]);
        const double hi = std::max(p[j], q[j]);
        // 0/0 := 0, positive/0 := +inf
        if (diff > 0.0) {
            const double rmin = lo > 0.0
                ? diff / lo
                : std::numeric_limits<double>::infinity();
            rep.lr_min_norm = std::max(rep.lr_min_norm, rmin);
            rep.lr_max_norm = std::max(rep.lr_max_norm, diff / hi);
        }
    }
    rep.lr_max_norm = std::min(rep.lr_max_norm, 1.0);
    return rep;
}

} // namespace madt
