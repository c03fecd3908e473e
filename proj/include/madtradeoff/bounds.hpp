#pragma once

#include <map>
#include <string>
#include <utility>

#include "madtradeoff/measure.hpp"

namespace madt {

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;   // rhs - lhs
    bool holds = false;   // slack >= -tol
    double tol = 0.0;
    std::map<std::string, double> context;
};

// slack >= -1e-12 * max(1, |lhs|, |rhs|)
double default_tolerance(double lhs, double rhs);

InequalityReport make_report(std::string name, double lhs, double rhs,
                             std::map<std::string, double> context = {});

// (1/5)(1 - H^2)^2 |u - v|  <=  E_P|X - u|  v  E_Q|X - v|
InequalityReport check_lemma2(const DiscreteMeasure& p, const DiscreteMeasure& q,
                              const FiniteRV& x, double u, double v);

// (1 - H^2)|u - v|  <=  sqrt(E_P|X-u| E_Q|X-u|) + sqrt(E_P|X-v| E_Q|X-v|)
InequalityReport check_cauchy_schwarz_step(const DiscreteMeasure& p,
                                           const DiscreteMeasure& q,
                                           const FiniteRV& x, double u, double v);

// first: d b <= 2 sqrt(a^2 + ab)  implies  a >= b (sqrt(1+d^2) - 1)/2
// second: sqrt(1+d^2) - 1 >= 2 d^2 / 5
std::pair<InequalityReport, InequalityReport>
check_quadratic_chain(double a, double b, double d);

// check_lemma2 with u = E_P[X], v = E_Q[X]
InequalityReport check_special_case_means(const DiscreteMeasure& p,
                                          const DiscreteMeasure& q,
                                          const FiniteRV& x);

// (dE)^2/(4 - 2H^2) (1/H - H)^2  <=  Var_P(X) + Var_Q(X)
InequalityReport check_lemma1_variance(const DiscreteMeasure& p,
                                       const DiscreteMeasure& q,
                                       const FiniteRV& x);

// ((1 - H^2)/lr_min_norm) |E_P X - E_Q X|  <=  MAD_P  v  MAD_Q
InequalityReport check_lemma3_first(const DiscreteMeasure& p,
                                    const DiscreteMeasure& q,
                                    const FiniteRV& x);

// lower bound on worst-case variance implied by a bias budget and a
// parameter gap of at least four times the budget
double variance_tradeoff_bound(double theta_gap, double hellinger,
                               double bias_budget);

} // namespace madt
