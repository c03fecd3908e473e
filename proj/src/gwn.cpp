#include "madtradeoff/gwn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "madtradeoff/rng.hpp"

namespace madt {

namespace {

constexpr double kSqrtTwoOverPi = 0.79788456080286535588;

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t;
    return s / static_cast<double>(v.size());
}

// midpoint of the central order statistics for even counts
double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double sample_variance(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double t : v) s += (t - mean) * (t - mean);
    return s / static_cast<double>(v.size() - 1);
}

double abs_dev_about(const std::vector<double>& v, double center) {
    double s = 0.0;
    for (double t : v) s += std::fabs(t - center);
    return s / static_cast<double>(v.size());
}

struct BatchStats {
    double bias, mad_mean, mad_median, variance;
};

BatchStats stats_of(const std::vector<double>& ests, double truth) {
    const double mean = mean_of(ests);
    const double med = median_of(ests);
    return {mean - truth, abs_dev_about(ests, mean), abs_dev_about(ests, med),
            sample_variance(ests, mean)};
}

} // namespace

EstimatorSpec make_kernel_estimator(const KernelSpec& kernel, double x0,
                                    double bandwidth, std::size_t m) {
    if (!(bandwidth >= 1.0 / static_cast<double>(m)))
        throw std::invalid_argument(
            "make_kernel_estimator: bandwidth below the grid resolution 1/m");
    EstimatorSpec est;
    est.x0 = x0;
    est.bandwidth = bandwidth;
    est.weights.resize(m);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double x = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
        est.weights[j] = kernel.eval((x - x0) / bandwidth);
        total += est.weights[j];
    }
    if (!(total > 0.0))
        throw std::invalid_argument(
            "make_kernel_estimator: kernel support misses every bin");
    for (double& w : est.weights) w /= total;
    return est;
}

double linear_estimate(const Observation& obs, const EstimatorSpec& est) {
    if (obs.bin_means.size() != est.weights.size())
        throw std::invalid_argument("linear_estimate: observation/weights mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < est.weights.size(); ++j)
        s += est.weights[j] * obs.bin_means[j];
    return s;
}

Observation simulate_replicate(const GridFunction& f, const SimConfig& cfg,
                               std::uint64_t replicate) {
    const GridFunction g = f.size() == cfg.m ? f : f.resampled(cfg.m);
    const double sd = std::sqrt(static_cast<double>(cfg.m) / cfg.n);
    Rng rng(cfg.seed, replicate + 1);
    Observation obs;
    obs.bin_means.resize(cfg.m);
    for (std::size_t j = 0; j < cfg.m; ++j)
        obs.bin_means[j] = g[j] + sd * rng.normal();
    return obs;
}

RiskEstimate exact_linear_risk(const EstimatorSpec& est, const GridFunction& f,
                               const SimConfig& cfg) {
    const GridFunction g = f.size() == cfg.m ? f : f.resampled(cfg.m);
    if (est.weights.size() != cfg.m)
        throw std::invalid_argument("exact_linear_risk: weights/config mismatch");
    double mu = 0.0, wsq = 0.0;
    for (std::size_t j = 0; j < cfg.m; ++j) {
        mu += est.weights[j] * g[j];
        wsq += est.weights[j] * est.weights[j];
    }
    RiskEstimate r;
    r.exact = true;
    r.bias = mu - f.value_at(est.x0);
    r.variance = static_cast<double>(cfg.m) / cfg.n * wsq;
    r.mad_mean = kSqrtTwoOverPi * std::sqrt(r.variance);
    r.mad_median = r.mad_mean;  // Gaussian: median = mean
    return r;
}

RiskEstimate mc_risk(const EstimatorFn& estimator, const GridFunction& f,
                     const SimConfig& cfg, double x0) {
    if (cfg.replicates < 100)
        throw std::invalid_argument("mc_risk: need at least 100 replicates");
    const double truth = f.value_at(x0);
    std::vector<double> ests(cfg.replicates);
    for (std::size_t r = 0; r < cfg.replicates; ++r)
        ests[r] = estimator(simulate_replicate(f, cfg, r));

    const BatchStats overall = stats_of(ests, truth);

    constexpr std::size_t kBatches = 20;
    std::vector<BatchStats> batches;
    const std::size_t batch_size = cfg.replicates / kBatches;
    if (batch_size >= 5) {
        for (std::size_t b = 0; b < kBatches; ++b) {
            const std::size_t lo = b * batch_size;
            const std::size_t hi =
                b + 1 == kBatches ? cfg.replicates : lo + batch_size;
            batches.push_back(stats_of(
                {ests.begin() + static_cast<std::ptrdiff_t>(lo),
                 ests.begin() + static_cast<std::ptrdiff_t>(hi)}, truth));
        }
    }
    auto se_of = [&](auto field) {
        if (batches.size() < 2) return 0.0;
        std::vector<double> vals;
        vals.reserve(batches.size());
        for (const auto& b : batches) vals.push_back(field(b));
        const double m = mean_of(vals);
        return std::sqrt(sample_variance(vals, m) /
                         static_cast<double>(vals.size()));
    };

    RiskEstimate r;
    r.bias = overall.bias;
    r.mad_mean = overall.mad_mean;
    r.mad_median = overall.mad_median;
    r.variance = overall.variance;
    r.bias_se = se_of([](const BatchStats& b) { return b.bias; });
    r.mad_mean_se = se_of([](const BatchStats& b) { return b.mad_mean; });
    r.mad_median_se = se_of([](const BatchStats& b) { return b.mad_median; });
    r.variance_se = se_of([](const BatchStats& b) { return b.variance; });
    return r;
}

namespace {

FamilyRisk aggregate(std::vector<RiskEstimate> per_member) {
    FamilyRisk fr;
    fr.per_member = std::move(per_member);
    for (std::size_t i = 0; i < fr.per_member.size(); ++i) {
        const auto& r = fr.per_member[i];
        if (std::fabs(r.bias) > fr.sup_abs_bias) {
            fr.sup_abs_bias = std::fabs(r.bias);
            fr.argmax_bias = i;
        }
        if (r.mad_mean > fr.sup_mad_mean) {
            fr.sup_mad_mean = r.mad_mean;
            fr.argmax_mad = i;
        }
        fr.sup_mad_median = std::max(fr.sup_mad_median, r.mad_median);
    }
    return fr;
}

} // namespace

FamilyRisk worst_case_over_family(const EstimatorSpec& est,
                                  const std::vector<GridFunction>& family,
                                  const SimConfig& cfg) {
    if (family.empty())
        throw std::invalid_argument("worst_case_over_family: empty family");
    std::vector<RiskEstimate> risks;
    risks.reserve(family.size());
    for (const auto& f : family) risks.push_back(exact_linear_risk(est, f, cfg));
    return aggregate(std::move(risks));
}

FamilyRisk worst_case_over_family_mc(const EstimatorFn& estimator, double x0,
                                     const std::vector<GridFunction>& family,
                                     const SimConfig& cfg) {
    if (family.empty())
        throw std::invalid_argument("worst_case_over_family_mc: empty family");
    std::vector<RiskEstimate> risks;
    risks.reserve(family.size());
    for (const auto& f : family) risks.push_back(mc_risk(estimator, f, cfg, x0));
    return aggregate(std::move(risks));
}

double folded_normal_mean(double mean, double sd) {
    if (!(sd > 0.0)) return std::fabs(mean);
    const double z = mean / sd;
    return sd * std::sqrt(2.0 / M_PI) * std::exp(-0.5 * z * z) +
           mean * std::erf(z / std::sqrt(2.0));
}

} // namespace madt
