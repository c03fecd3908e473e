#include "madtradeoff/frontier.hpp"

#include "madtradeoff/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace madt {

namespace {

constexpr double kComplianceSlack = 1.0 - 1e-9;  // strict inequality proxy

double rate_exponent(double beta) { return beta / (2.0 * beta + 1.0); }

} // namespace

FrontierConstants theorem1_constants(const FrontierSpec& spec) {
    const double V = spec.V();
    FrontierConstants k;
    k.c = 0.2 *
          std::exp(-std::pow(2.0 / V, 1.0 / spec.beta) * spec.C *
                   spec.kernel.l2_norm_sq) *
          std::pow(spec.C, rate_exponent(spec.beta));
    const double s = std::min(spec.x0, 1.0 - spec.x0);
    k.N = spec.C * std::pow(2.0 / V, (2.0 * spec.beta + 1.0) / spec.beta) *
          std::pow(s, -(2.0 * spec.beta + 1.0));
    return k;
}

std::vector<FrontierPoint> mad_frontier(const FrontierSpec& spec,
                                        const std::vector<double>& n_values) {
    const FrontierConstants k = theorem1_constants(spec);
    const double e = rate_exponent(spec.beta);
    std::vector<FrontierPoint> points;
    points.reserve(n_values.size());
    for (double n : n_values) {
        if (!(n > 0.0))
            throw std::invalid_argument("mad_frontier: n must be positive");
        FrontierPoint pt;
        pt.n = n;
        pt.psi_n = std::pow(n, -e);
        pt.bias_budget = std::pow(spec.C / n, e);
        pt.mad_lower = k.c * pt.psi_n;
        pt.r_n = std::pow(2.0 / spec.V(), 1.0 / spec.beta) *
                 std::pow(spec.C / n, 1.0 / (2.0 * spec.beta + 1.0));
        pt.valid = n >= k.N;
        points.push_back(pt);
    }
    return points;
}

ExperimentResult run_tradeoff_experiment(const FrontierSpec& spec,
                                         const SimConfig& cfg,
                                         const std::vector<double>& n_values,
                                         const std::vector<double>& gammas) {
    if (gammas.empty())
        throw std::invalid_argument("run_tradeoff_experiment: empty bandwidth grid");
    ExperimentResult res;
    res.constants = theorem1_constants(spec);
    res.frontier = mad_frontier(spec, n_values);

    std::vector<double> log_n, log_best_mad;

    for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
        const double n = n_values[ni];
        const FrontierPoint& pt = res.frontier[ni];
        SimConfig cell_cfg = cfg;
        cell_cfg.n = n;

        const FamilySpec minus =
            make_family_spec(spec.beta, spec.R, spec.C, spec.kernel, n, -1.0, spec.x0);
        const FamilySpec plus =
            make_family_spec(spec.beta, spec.R, spec.C, spec.kernel, n, +1.0, spec.x0);
        const std::vector<GridFunction> family = {
            build_family_member(minus, spec.kernel, cfg.m),
            GridFunction::zero(cfg.m),
            build_family_member(plus, spec.kernel, cfg.m)};

        const double h_unit = std::pow(n, -1.0 / (2.0 * spec.beta + 1.0));
        double best_compliant_mad = std::numeric_limits<double>::infinity();

        for (double gamma : gammas) {
            ExperimentCell cell;
            cell.n = n;
            cell.gamma = gamma;
            cell.bandwidth = gamma * h_unit;
            cell.valid = pt.valid;
            cell.bias_budget = pt.bias_budget;
            cell.mad_lower = pt.mad_lower;

            const EstimatorSpec est = make_kernel_estimator(
                spec.kernel, spec.x0, cell.bandwidth, cfg.m);
            const FamilyRisk fr = worst_case_over_family(est, family, cell_cfg);
            cell.sup_abs_bias = fr.sup_abs_bias;
            cell.sup_mad_mean = fr.sup_mad_mean;
            cell.sup_mad_median = fr.sup_mad_median;
            cell.variance = fr.per_member[0].variance;
            cell.compliant =
                fr.sup_abs_bias <= pt.bias_budget * kComplianceSlack;

            // instantiate the MAD change-of-expectation bound with
            // P = P_{f_{+-1}}, Q = P_0, X = f_hat(x0), exact linear means
            const RiskEstimate& rm = fr.per_member[0];
            const RiskEstimate& r0 = fr.per_member[1];
            const RiskEstimate& rp = fr.per_member[2];
            const double mu_minus = rm.bias + family[0].value_at(spec.x0);
            const double mu_zero = r0.bias;
            const double mu_plus = rp.bias + family[2].value_at(spec.x0);
            const double l2_plus = family[2].l2_norm_sq();
            const double l2_minus = family[0].l2_norm_sq();
            cell.eq_lhs_plus = 0.2 * std::exp(-n / 4.0 * l2_plus) *
                               std::fabs(mu_plus - mu_zero);
            cell.eq_lhs_minus = 0.2 * std::exp(-n / 4.0 * l2_minus) *
                                std::fabs(mu_minus - mu_zero);
            cell.eq_rhs = std::max(rp.mad_mean, r0.mad_mean);
            cell.eq_holds_plus =
                cell.eq_lhs_plus <= cell.eq_rhs +
                default_tolerance(cell.eq_lhs_plus, cell.eq_rhs);
            cell.eq_holds_minus =
                cell.eq_lhs_minus <= cell.eq_rhs +
                default_tolerance(cell.eq_lhs_minus, cell.eq_rhs);

            if (!cell.eq_holds_plus || !cell.eq_holds_minus)
                res.violations.push_back(
                    "change-of-expectation bound violated at n=" +
                    std::to_string(n) + " gamma=" + std::to_string(gamma));
            if (cell.compliant) {
                ++res.compliant_count;
                best_compliant_mad =
                    std::min(best_compliant_mad, cell.sup_mad_mean);
                if (cell.valid && cell.sup_mad_mean < pt.mad_lower)
                    res.violations.push_back(
                        "frontier violated at n=" + std::to_string(n) +
                        " gamma=" + std::to_string(gamma));
                if (cell.valid && cell.sup_mad_median < pt.mad_lower)
                    res.violations.push_back(
                        "median frontier violated at n=" + std::to_string(n) +
                        " gamma=" + std::to_string(gamma));
            }
            res.cells.push_back(cell);
        }

        if (pt.valid && std::isfinite(best_compliant_mad)) {
            log_n.push_back(std::log(n));
            log_best_mad.push_back(std::log(best_compliant_mad));
        }
    }

    if (log_n.size() >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double cnt = static_cast<double>(log_n.size());
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            sx += log_n[i];
            sy += log_best_mad[i];
            sxx += log_n[i] * log_n[i];
            sxy += log_n[i] * log_best_mad[i];
        }
        res.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        res.slope_available = true;
    }
    return res;
}

std::vector<MinimaxComparisonRow>
minimax_comparison(const FrontierSpec& spec, const SimConfig& cfg,
                   const std::vector<double>& n_values,
                   const std::vector<double>& gammas) {
    std::vector<MinimaxComparisonRow> rows;
    const FrontierConstants k = theorem1_constants(spec);
    for (double n : n_values) {
        SimConfig cell_cfg = cfg;
        cell_cfg.n = n;
        const FamilySpec minus =
            make_family_spec(spec.beta, spec.R, spec.C, spec.kernel, n, -1.0, spec.x0);
        const FamilySpec plus =
            make_family_spec(spec.beta, spec.R, spec.C, spec.kernel, n, +1.0, spec.x0);
        const std::vector<GridFunction> family = {
            build_family_member(minus, spec.kernel, cfg.m),
            GridFunction::zero(cfg.m),
            build_family_member(plus, spec.kernel, cfg.m)};
        const double h_unit = std::pow(n, -1.0 / (2.0 * spec.beta + 1.0));
        for (double gamma : gammas) {
            const EstimatorSpec est = make_kernel_estimator(
                spec.kernel, spec.x0, gamma * h_unit, cfg.m);
            const FamilyRisk fr = worst_case_over_family(est, family, cell_cfg);
            MinimaxComparisonRow row;
            row.n = n;
            row.gamma = gamma;
            row.sup_abs_bias = fr.sup_abs_bias;
            row.sup_mad = fr.sup_mad_mean;
            const double sd = std::sqrt(fr.per_member[0].variance);
            for (const auto& r : fr.per_member)
                row.sup_risk = std::max(row.sup_risk,
                                        folded_normal_mean(r.bias, sd));
            row.display1 = row.sup_risk - row.sup_abs_bias;
            row.display2 = row.sup_abs_bias - row.sup_risk;
            const double tol = default_tolerance(row.sup_mad, row.sup_risk);
            row.holds1 = row.sup_mad >= row.display1 - tol;
            row.holds2 = row.sup_mad >= row.display2 - tol;
            row.minimax_uninformative = row.display1 <= 0.0 && row.display2 <= 0.0;
            row.mad_lower = k.c * std::pow(n, -rate_exponent(spec.beta));
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<double> default_gammas() {
    return {0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
}

std::vector<double> default_n_sweep() {
    std::vector<double> ns;
    for (int k = 10; k <= 16; ++k) ns.push_back(std::pow(2.0, k));
    return ns;
}

} // namespace madt
