#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "madtradeoff/bounds.hpp"

namespace madt {

struct WitnessReport {
    FiniteRV witness;                       // indicator of the selected atom
    std::optional<std::size_t> selected_atom;
    bool vacuous = false;                   // ratio norm is zero
    bool literal_bound_holds = false;       // max MAD <= max(p*, q*)
    bool adjusted_bound_holds = false;      // max MAD <= 2 max(p*, q*)
    std::map<std::string, double> details;
};

// Indicator witness for the second claim of the ratio-norm lemma. The
// selected atom maximizes |p_j - q_j| / max(p_j, q_j), lowest index on ties.
WitnessReport tightness_witness(const DiscreteMeasure& p, const DiscreteMeasure& q);

struct RaoBlackwellResult {
    FiniteRV reduced;
    double mean_p_before = 0.0, mean_p_after = 0.0;
    double mean_q_before = 0.0, mean_q_after = 0.0;
    double mad_p_before = 0.0, mad_p_after = 0.0;
    double mad_q_before = 0.0, mad_q_after = 0.0;
};

// Collapse X to its conditional mean on the atom set A. Requires positive
// probability of A under both measures and matching conditional means, and
// then preserves both means while not increasing either mean-centered MAD.
RaoBlackwellResult rao_blackwell_reduce(const FiniteRV& x,
                                        const std::set<std::size_t>& a,
                                        const DiscreteMeasure& p,
                                        const DiscreteMeasure& q,
                                        double tol = 1e-9);

// X == v constant: the attained ratio rhs/lhs equals 5/(1 - H^2)^2
InequalityReport near_tightness_example(const DiscreteMeasure& p,
                                        const DiscreteMeasure& q,
                                        double u, double v);

struct SearchInstance {
    DiscreteMeasure p;
    DiscreteMeasure q;
    FiniteRV x;
    double u = 0.0;
    double v = 0.0;
};

class Rng;

// random full-support instance: simplex weights from exponential draws,
// X in [-10,10]^M, u and v in [-10,10]
SearchInstance random_lemma_instance(Rng& rng, std::size_t size);

struct SearchResult {
    SearchInstance best;
    double best_ratio = 0.0;  // lhs/rhs of the lemma2 report, never above 1
    InequalityReport best_report;
    std::vector<std::pair<std::uint64_t, double>> trace;  // (iteration, ratio)
    std::uint64_t iterations = 0;
    std::uint64_t seed = 0;
};

// Randomized restarts plus coordinate-wise perturbation maximizing the
// lemma2 ratio lhs/rhs over (P, Q, X, u, v). Deterministic given the seed.
SearchResult tightness_search(std::size_t space_size, std::uint64_t iterations,
                              std::uint64_t seed);

} // namespace madt
