#include "madtradeoff/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace madt {

double default_tolerance(double lhs, double rhs) {
    return 1e-12 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

InequalityReport make_report(std::string name, double lhs, double rhs,
                             std::map<std::string, double> context) {
    InequalityReport rep;
    rep.name = std::move(name);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.slack = rhs - lhs;
    rep.tol = default_tolerance(lhs, rhs);
    rep.holds = rep.slack >= -rep.tol;
    rep.context = std::move(context);
    return rep;
}

InequalityReport check_lemma2(const DiscreteMeasure& p, const DiscreteMeasure& q,
                              const FiniteRV& x, double u, double v) {
    require_same_atoms(p, q);
    require_aligned(p, x);
    const double h2 = hellinger_sq_discrete(p, q);
    const double lhs = 0.2 * (1.0 - h2) * (1.0 - h2) * std::fabs(u - v);
    const double ep = abs_deviation(p, x, u);
    const double eq = abs_deviation(q, x, v);
    return make_report("lemma2", lhs, std::max(ep, eq),
                       {{"H2", h2}, {"u", u}, {"v", v},
                        {"E_P|X-u|", ep}, {"E_Q|X-v|", eq}});
}

InequalityReport check_cauchy_schwarz_step(const DiscreteMeasure& p,
                                           const DiscreteMeasure& q,
                                           const FiniteRV& x, double u, double v) {
    require_same_atoms(p, q);
    require_aligned(p, x);
    const double h2 = hellinger_sq_discrete(p, q);
    const double lhs = (1.0 - h2) * std::fabs(u - v);
    const double rhs =
        std::sqrt(abs_deviation(p, x, u) * abs_deviation(q, x, u)) +
        std::sqrt(abs_deviation(p, x, v) * abs_deviation(q, x, v));
    return make_report("cauchy_schwarz_step", lhs, rhs,
                       {{"H2", h2}, {"u", u}, {"v", v}});
}

std::pair<InequalityReport, InequalityReport>
check_quadratic_chain(double a, double b, double d) {
    if (!(a >= 0.0) || !(b >= 0.0) || !(d >= 0.0) || !(d <= 1.0))
        throw std::invalid_argument(
            "check_quadratic_chain: need a,b >= 0 and d in [0,1]");
    const double premise_rhs = 2.0 * std::sqrt(a * a + a * b);
    const double conclusion = b * (std::sqrt(1.0 + d * d) - 1.0) / 2.0;
    InequalityReport first;
    if (d * b <= premise_rhs + default_tolerance(d * b, premise_rhs)) {
        first = make_report("quadratic_implication", conclusion, a,
                            {{"a", a}, {"b", b}, {"d", d}});
    } else {
        // premise false, implication vacuously true
        first = make_report("quadratic_implication", 0.0, a,
                            {{"a", a}, {"b", b}, {"d", d}, {"vacuous", 1.0}});
    }
    InequalityReport second =
        make_report("sqrt_one_plus_d_sq", 0.4 * d * d,
                    std::sqrt(1.0 + d * d) - 1.0, {{"d", d}});
    return {first, second};
}

InequalityReport check_special_case_means(const DiscreteMeasure& p,
                                          const DiscreteMeasure& q,
                                          const FiniteRV& x) {
    const double u = expectation(p, x);
    const double v = expectation(q, x);
    InequalityReport rep = check_lemma2(p, q, x, u, v);
    rep.name = "lemma2_means";
    return rep;
}

InequalityReport check_lemma1_variance(const DiscreteMeasure& p,
                                       const DiscreteMeasure& q,
                                       const FiniteRV& x) {
    require_same_atoms(p, q);
    require_aligned(p, x);
    const double h2 = hellinger_sq_discrete(p, q);
    const double h = std::sqrt(h2);
    const double de = expectation(p, x) - expectation(q, x);
    double lhs = 0.0;
    if (h > 0.0) {
        const double factor = 1.0 / h - h;
        lhs = de * de / (4.0 - 2.0 * h2) * factor * factor;
    }
    const double rhs = variance(p, x) + variance(q, x);
    return make_report("lemma1_variance", lhs, rhs,
                       {{"H2", h2}, {"dE", de}});
}

InequalityReport check_lemma3_first(const DiscreteMeasure& p,
                                    const DiscreteMeasure& q,
                                    const FiniteRV& x) {
    require_same_atoms(p, q);
    require_aligned(p, x);
    const DivergenceReport div = lr_ratio_norms(p, q);
    const double ep = expectation(p, x);
    const double eq = expectation(q, x);
    double lhs = 0.0;
    if (div.lr_min_norm > 0.0 && std::isfinite(div.lr_min_norm))
        lhs = (1.0 - div.hellinger_sq) / div.lr_min_norm * std::fabs(ep - eq);
    const double rhs = std::max(abs_deviation(p, x, ep), abs_deviation(q, x, eq));
    return make_report("lemma3_first", lhs, rhs,
                       {{"H2", div.hellinger_sq},
                        {"lr_min_norm", div.lr_min_norm},
                        {"dE", ep - eq}});
}

double variance_tradeoff_bound(double theta_gap, double hellinger,
                               double bias_budget) {
    if (!(bias_budget >= 0.0))
        throw std::invalid_argument("variance_tradeoff_bound: bias_budget < 0");
    if (!(std::fabs(theta_gap) >= 4.0 * bias_budget))
        throw std::invalid_argument(
            "variance_tradeoff_bound: need |theta_gap| >= 4*bias_budget");
    if (!(hellinger > 0.0) || !(hellinger < 1.0))
        throw std::invalid_argument(
            "variance_tradeoff_bound: hellinger must lie in (0,1)");
    const double factor = 1.0 / hellinger - hellinger;
    return 0.25 * theta_gap * theta_gap /
           (4.0 - 2.0 * hellinger * hellinger) * factor * factor / 2.0;
}

} // namespace madt
