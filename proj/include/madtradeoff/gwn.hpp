#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "madtradeoff/holder.hpp"

namespace madt {

struct SimConfig {
    double n = 1024.0;          // noise level of the continuous model
    std::size_t m = 1024;       // bin count of the discretization
    std::size_t replicates = 10000;
    std::uint64_t seed = 0;
};

// Bin-integral discretization: Y_j ~ Normal(bin mean of f, m/n), independent.
struct Observation {
    std::vector<double> bin_means;
};

struct EstimatorSpec {
    double x0 = 0.5;
    double bandwidth = 0.1;
    std::vector<double> weights;  // normalized, sum 1
};

// weights w_j proportional to K((x_j - x0)/h); requires h >= 1/m and at
// least one bin inside the kernel support
EstimatorSpec make_kernel_estimator(const KernelSpec& kernel, double x0,
                                    double bandwidth, std::size_t m);

double linear_estimate(const Observation& obs, const EstimatorSpec& est);

struct RiskEstimate {
    double bias = 0.0, bias_se = 0.0;
    double mad_mean = 0.0, mad_mean_se = 0.0;
    double mad_median = 0.0, mad_median_se = 0.0;
    double variance = 0.0, variance_se = 0.0;
    bool exact = false;
};

// one replicate of the discretized observation; the stream depends only on
// (cfg.seed, replicate), so replicates can be generated in any order
Observation simulate_replicate(const GridFunction& f, const SimConfig& cfg,
                               std::uint64_t replicate);

// closed-form risks of a linear estimator: exact bias and variance, and
// mad = sqrt(2/pi) * sd for both centerings (Gaussian, median = mean)
RiskEstimate exact_linear_risk(const EstimatorSpec& est, const GridFunction& f,
                               const SimConfig& cfg);

using EstimatorFn = std::function<double(const Observation&)>;

// Monte Carlo risks with 20-batch standard errors; truth = f(x0)
RiskEstimate mc_risk(const EstimatorFn& estimator, const GridFunction& f,
                     const SimConfig& cfg, double x0);

struct FamilyRisk {
    std::vector<RiskEstimate> per_member;
    double sup_abs_bias = 0.0;
    double sup_mad_mean = 0.0;
    double sup_mad_median = 0.0;
    std::size_t argmax_bias = 0;
    std::size_t argmax_mad = 0;
};

FamilyRisk worst_case_over_family(const EstimatorSpec& est,
                                  const std::vector<GridFunction>& family,
                                  const SimConfig& cfg);

FamilyRisk worst_case_over_family_mc(const EstimatorFn& estimator, double x0,
                                     const std::vector<GridFunction>& family,
                                     const SimConfig& cfg);

// mean of |Z| for Z ~ Normal(mean, sd^2)
double folded_normal_mean(double mean, double sd);

} // namespace madt
