#include "madtradeoff/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "madtradeoff/rng.hpp"

namespace madt {

WitnessReport tightness_witness(const DiscreteMeasure& p, const DiscreteMeasure& q) {
    require_same_atoms(p, q);
    const std::size_t m = p.size();

    std::size_t jstar = 0;
    double best_ratio = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double hi = std::max(p[j], q[j]);
        const double diff = std::fabs(p[j] - q[j]);
        const double ratio = (diff > 0.0 && hi > 0.0) ? diff / hi : 0.0;
        if (ratio > best_ratio) {  // ties keep the lowest index
            best_ratio = ratio;
            jstar = j;
        }
    }

    WitnessReport rep;
    if (best_ratio == 0.0) {
        rep.vacuous = true;
        rep.witness = FiniteRV::constant(m, 0.0);
        return rep;
    }

    rep.selected_atom = jstar;
    rep.witness = FiniteRV::constant(m, 0.0);
    rep.witness.values[jstar] = 1.0;

    const double pj = p[jstar], qj = q[jstar];
    const double mad_p = 2.0 * pj * (1.0 - pj);  // Bernoulli mean-MAD
    const double mad_q = 2.0 * qj * (1.0 - qj);
    const double literal_bound = std::max(pj, qj);  // = |p* - q*| / lr_max_norm
    const double adjusted_bound = 2.0 * literal_bound;
    const double max_mad = std::max(mad_p, mad_q);
    const double tol = default_tolerance(max_mad, literal_bound);

    rep.literal_bound_holds = max_mad <= literal_bound + tol;
    rep.adjusted_bound_holds = max_mad <= adjusted_bound + tol;
    rep.details = {{"jstar", static_cast<double>(jstar)},
                   {"p_jstar", pj},
                   {"q_jstar", qj},
                   {"mad_p", mad_p},
                   {"mad_q", mad_q},
                   {"literal_bound", literal_bound},
                   {"adjusted_bound", adjusted_bound}};
    return rep;
}

RaoBlackwellResult rao_blackwell_reduce(const FiniteRV& x,
                                        const std::set<std::size_t>& a,
                                        const DiscreteMeasure& p,
                                        const DiscreteMeasure& q,
                                        double tol) {
    require_same_atoms(p, q);
    require_aligned(p, x);
    for (std::size_t j : a)
        if (j >= p.size())
            throw std::invalid_argument("rao_blackwell_reduce: atom index out of range");

    double pa = 0.0, qa = 0.0, px = 0.0, qx = 0.0;
    for (std::size_t j : a) {
        pa += p[j];
        qa += q[j];
        px += p[j] * x.values[j];
        qx += q[j] * x.values[j];
    }
    if (!(pa > 0.0) || !(qa > 0.0))
        throw std::invalid_argument(
            "rao_blackwell_reduce: event has zero probability under P or Q");
    const double cond_p = px / pa;
    const double cond_q = qx / qa;
    if (std::fabs(cond_p - cond_q) > tol)
        throw std::invalid_argument(
            "rao_blackwell_reduce: conditional means differ by " +
            std::to_string(std::fabs(cond_p - cond_q)));

    FiniteRV reduced = x;
    for (std::size_t j : a) reduced.values[j] = cond_p;

    RaoBlackwellResult res;
    res.reduced = reduced;
    res.mean_p_before = expectation(p, x);
    res.mean_q_before = expectation(q, x);
    res.mean_p_after = expectation(p, reduced);
    res.mean_q_after = expectation(q, reduced);
    res.mad_p_before = abs_deviation(p, x, res.mean_p_before);
    res.mad_q_before = abs_deviation(q, x, res.mean_q_before);
    res.mad_p_after = abs_deviation(p, reduced, res.mean_p_after);
    res.mad_q_after = abs_deviation(q, reduced, res.mean_q_after);
    return res;
}

InequalityReport near_tightness_example(const DiscreteMeasure& p,
                                        const DiscreteMeasure& q,
                                        double u, double v) {
    const double h2 = hellinger_sq_discrete(p, q);
    if (h2 >= 1.0)
        throw std::invalid_argument("near_tightness_example: requires H < 1");
    FiniteRV x = FiniteRV::constant(p.size(), v);
    InequalityReport rep = check_lemma2(p, q, x, u, v);
    rep.name = "near_tightness";
    rep.context["ratio"] = rep.lhs > 0.0 ? rep.rhs / rep.lhs : 0.0;
    rep.context["ratio_closed_form"] = 5.0 / ((1.0 - h2) * (1.0 - h2));
    return rep;
}

namespace {

std::vector<double> random_simplex(Rng& rng, std::size_t m) {
    std::vector<double> w(m);
    double total = 0.0;
    for (double& t : w) {
        t = -std::log(1.0 - rng.uniform());
        total += t;
    }
    for (double& t : w) t /= total;
    return w;
}

double lemma2_ratio(const SearchInstance& inst, InequalityReport* out = nullptr) {
    InequalityReport rep =
        check_lemma2(inst.p, inst.q, inst.x, inst.u, inst.v);
    if (out) *out = rep;
    return rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
}

std::vector<double> perturb_simplex(Rng& rng, const std::vector<double>& w,
                                    double scale) {
    std::vector<double> out(w.size());
    double total = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        out[j] = std::max(1e-12, w[j] * std::exp(scale * rng.normal()));
        total += out[j];
    }
    for (double& t : out) t /= total;
    return out;
}

} // namespace

SearchInstance random_lemma_instance(Rng& rng, std::size_t m) {
    std::vector<double> xv(m);
    for (double& t : xv) t = rng.uniform(-10.0, 10.0);
    return SearchInstance{DiscreteMeasure::from_weights(random_simplex(rng, m)),
                          DiscreteMeasure::from_weights(random_simplex(rng, m)),
                          FiniteRV{xv},
                          rng.uniform(-10.0, 10.0),
                          rng.uniform(-10.0, 10.0)};
}

SearchResult tightness_search(std::size_t space_size, std::uint64_t iterations,
                              std::uint64_t seed) {
    if (space_size < 2 || space_size > 50)
        throw std::invalid_argument("tightness_search: space_size must be in [2,50]");

    constexpr std::uint64_t kItersPerRestart = 2000;
    Rng restart_rng(seed, 0);

    SearchInstance current = random_lemma_instance(restart_rng, space_size);
    double current_ratio = lemma2_ratio(current);
    SearchResult res{current, current_ratio, {}, {}, iterations, seed};
    lemma2_ratio(current, &res.best_report);
    res.trace.emplace_back(0, current_ratio);

    Rng rng(seed, 1);
    for (std::uint64_t it = 0; it < iterations; ++it) {
        if (it > 0 && it % kItersPerRestart == 0) {
            current = random_lemma_instance(restart_rng, space_size);
            current_ratio = lemma2_ratio(current);
        }
        SearchInstance cand = current;
        const double scale = rng.uniform(0.01, 0.5);
        switch (rng.below(5)) {
            case 0:
                cand.p = DiscreteMeasure::from_weights(
                    perturb_simplex(rng, current.p.probs(), scale));
                break;
            case 1:
                cand.q = DiscreteMeasure::from_weights(
                    perturb_simplex(rng, current.q.probs(), scale));
                break;
            case 2: {
                const std::size_t j = rng.below(space_size);
                cand.x.values[j] += scale * 10.0 * rng.normal();
                break;
            }
            case 3:
                cand.u += scale * rng.normal();
                break;
            default:
                cand.v += scale * rng.normal();
                break;
        }
        const double cand_ratio = lemma2_ratio(cand);
        if (cand_ratio > current_ratio) {
            current = cand;
            current_ratio = cand_ratio;
            if (cand_ratio > res.best_ratio) {
                res.best = cand;
                res.best_ratio = cand_ratio;
                lemma2_ratio(cand, &res.best_report);
                res.trace.emplace_back(it + 1, cand_ratio);
            }
        }
    }
    return res;
}

} // namespace madt
