#pragma once

#include <string>
#include <vector>

#include "madtradeoff/gwn.hpp"

namespace madt {

struct FrontierSpec {
    double beta = 1.0;
    double R = 1.0;
    double C = 1.0;
    double x0 = 0.5;
    KernelSpec kernel;

    double V() const { return R / kernel.holder_norm; }
};

struct FrontierConstants {
    double c = 0.0;  // sup MAD >= c n^{-beta/(2 beta + 1)} for n >= N
    double N = 0.0;
};

// c = (1/5) exp(-(2/V)^{1/beta} C ||K||_2^2) C^{beta/(2 beta + 1)};
// N keeps the bump support inside [0,1]: r_n <= min(x0, 1 - x0)
FrontierConstants theorem1_constants(const FrontierSpec& spec);

struct FrontierPoint {
    double n = 0.0;
    double psi_n = 0.0;        // n^{-beta/(2 beta + 1)}
    double bias_budget = 0.0;  // (C/n)^{beta/(2 beta + 1)}
    double mad_lower = 0.0;    // c * psi_n
    double r_n = 0.0;
    bool valid = false;        // n >= N
};

std::vector<FrontierPoint> mad_frontier(const FrontierSpec& spec,
                                        const std::vector<double>& n_values);

struct ExperimentCell {
    double n = 0.0;
    double gamma = 0.0;      // bandwidth multiplier, h = gamma n^{-1/(2 beta + 1)}
    double bandwidth = 0.0;
    double sup_abs_bias = 0.0;
    double sup_mad_mean = 0.0;
    double sup_mad_median = 0.0;
    double variance = 0.0;
    bool compliant = false;  // sup bias within the budget
    bool valid = false;      // n >= N
    double bias_budget = 0.0;
    double mad_lower = 0.0;
    // change-of-expectation bound instantiated at (f_{+1}, f_0) and (f_{-1}, f_0)
    double eq_lhs_plus = 0.0, eq_lhs_minus = 0.0, eq_rhs = 0.0;
    bool eq_holds_plus = false, eq_holds_minus = false;
};

struct ExperimentResult {
    FrontierConstants constants;
    std::vector<FrontierPoint> frontier;
    std::vector<ExperimentCell> cells;
    std::vector<std::string> violations;
    double slope = 0.0;          // log-log fit of best compliant sup-MAD vs n
    bool slope_available = false;
    std::size_t compliant_count = 0;
};

// exact-path trade-off experiment over the three-member family
// {f_{-1}, f_0, f_{+1}} for each (n, bandwidth multiplier) pair
ExperimentResult run_tradeoff_experiment(const FrontierSpec& spec,
                                         const SimConfig& cfg,
                                         const std::vector<double>& n_values,
                                         const std::vector<double>& gammas);

struct MinimaxComparisonRow {
    double n = 0.0, gamma = 0.0;
    double sup_risk = 0.0;       // family-sup of E|f_hat - f(x0)|
    double sup_abs_bias = 0.0;
    double sup_mad = 0.0;
    double display1 = 0.0;       // sup_risk - sup_abs_bias
    double display2 = 0.0;       // sup_abs_bias - sup_risk
    bool holds1 = false, holds2 = false;
    bool minimax_uninformative = false;  // both displays <= 0
    double mad_lower = 0.0;
};

std::vector<MinimaxComparisonRow>
minimax_comparison(const FrontierSpec& spec, const SimConfig& cfg,
                   const std::vector<double>& n_values,
                   const std::vector<double>& gammas);

// default bandwidth multipliers; chosen so the compliant set is nonempty
// across the default n sweep
std::vector<double> default_gammas();
std::vector<double> default_n_sweep();

} // namespace madt
