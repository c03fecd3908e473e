#pragma once

#include <json.hpp>

#include "madtradeoff/bounds.hpp"
#include "madtradeoff/frontier.hpp"
#include "madtradeoff/witness.hpp"

namespace madt {

using nlohmann::json;

inline json to_json(const DiscreteMeasure& m) {
    return json{{"atoms", m.atoms()}, {"probs", m.probs()}};
}

inline DiscreteMeasure measure_from_json(const json& j) {
    return DiscreteMeasure(j.at("atoms").get<std::vector<std::string>>(),
                           j.at("probs").get<std::vector<double>>());
}

inline json to_json(const InequalityReport& r) {
    return json{{"name", r.name},       {"lhs", r.lhs},   {"rhs", r.rhs},
                {"slack", r.slack},     {"holds", r.holds}, {"tol", r.tol},
                {"context", r.context}};
}

inline json to_json(const WitnessReport& r) {
    json j{{"vacuous", r.vacuous},
           {"literal_bound_holds", r.literal_bound_holds},
           {"adjusted_bound_holds", r.adjusted_bound_holds},
           {"witness", r.witness.values},
           {"details", r.details}};
    if (r.selected_atom) j["selected_atom"] = *r.selected_atom;
    return j;
}

inline json to_json(const RiskEstimate& r) {
    return json{{"bias", r.bias},
                {"bias_se", r.bias_se},
                {"mad_mean", r.mad_mean},
                {"mad_mean_se", r.mad_mean_se},
                {"mad_median", r.mad_median},
                {"mad_median_se", r.mad_median_se},
                {"variance", r.variance},
                {"variance_se", r.variance_se},
                {"exact", r.exact}};
}

inline json to_json(const FrontierPoint& p) {
    return json{{"n", p.n},
                {"psi_n", p.psi_n},
                {"bias_budget", p.bias_budget},
                {"mad_lower", p.mad_lower},
                {"r_n", p.r_n},
                {"valid", p.valid}};
}

inline json to_json(const ExperimentCell& c) {
    return json{{"n", c.n},
                {"gamma", c.gamma},
                {"bandwidth", c.bandwidth},
                {"sup_abs_bias", c.sup_abs_bias},
                {"sup_mad_mean", c.sup_mad_mean},
                {"sup_mad_median", c.sup_mad_median},
                {"variance", c.variance},
                {"compliant", c.compliant},
                {"valid", c.valid},
                {"bias_budget", c.bias_budget},
                {"mad_lower", c.mad_lower},
                {"eq_lhs_plus", c.eq_lhs_plus},
                {"eq_lhs_minus", c.eq_lhs_minus},
                {"eq_rhs", c.eq_rhs},
                {"eq_holds_plus", c.eq_holds_plus},
                {"eq_holds_minus", c.eq_holds_minus}};
}

} // namespace madt
