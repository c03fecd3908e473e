#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "madtradeoff/frontier.hpp"
#include "madtradeoff/witness.hpp"

namespace py = pybind11;
using namespace madt;

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "bias-MAD trade-off verification toolkit";

    py::class_<DiscreteMeasure>(mod, "DiscreteMeasure")
        .def(py::init<std::vector<std::string>, std::vector<double>>(),
             py::arg("atoms"), py::arg("probs"))
        .def_static("from_weights", &DiscreteMeasure::from_weights)
        .def_property_readonly("atoms", &DiscreteMeasure::atoms)
        .def_property_readonly("probs", &DiscreteMeasure::probs)
        .def("__len__", &DiscreteMeasure::size);

    py::class_<FiniteRV>(mod, "FiniteRV")
        .def(py::init([](std::vector<double> v) { return FiniteRV{std::move(v)}; }))
        .def_readonly("values", &FiniteRV::values);

    py::class_<DivergenceReport>(mod, "DivergenceReport")
        .def_readonly("hellinger_sq", &DivergenceReport::hellinger_sq)
        .def_readonly("lr_min_norm", &DivergenceReport::lr_min_norm)
        .def_readonly("lr_max_norm", &DivergenceReport::lr_max_norm);

    py::class_<InequalityReport>(mod, "InequalityReport")
        .def_readonly("name", &InequalityReport::name)
        .def_readonly("lhs", &InequalityReport::lhs)
        .def_readonly("rhs", &InequalityReport::rhs)
        .def_readonly("slack", &InequalityReport::slack)
        .def_readonly("holds", &InequalityReport::holds)
        .def_readonly("tol", &InequalityReport::tol)
        .def_readonly("context", &InequalityReport::context);

    mod.def("hellinger_sq_discrete", &hellinger_sq_discrete);
    mod.def("hellinger_sq_gaussian_location", &hellinger_sq_gaussian_location);
    mod.def("hellinger_sq_product_gaussian", &hellinger_sq_product_gaussian,
            py::arg("means1"), py::arg("means2"), py::arg("variance"));
    mod.def("lr_ratio_norms", &lr_ratio_norms);
    mod.def("expectation", &expectation);
    mod.def("abs_deviation", &abs_deviation);

    mod.def("check_lemma2", &check_lemma2);
    mod.def("check_cauchy_schwarz_step", &check_cauchy_schwarz_step);
    mod.def("check_quadratic_chain", &check_quadratic_chain);
    mod.def("check_special_case_means", &check_special_case_means);
    mod.def("check_lemma1_variance", &check_lemma1_variance);
    mod.def("check_lemma3_first", &check_lemma3_first);
    mod.def("variance_tradeoff_bound", &variance_tradeoff_bound);

    py::class_<WitnessReport>(mod, "WitnessReport")
        .def_readonly("vacuous", &WitnessReport::vacuous)
        .def_readonly("selected_atom", &WitnessReport::selected_atom)
        .def_readonly("literal_bound_holds", &WitnessReport::literal_bound_holds)
        .def_readonly("adjusted_bound_holds", &WitnessReport::adjusted_bound_holds)
        .def_readonly("details", &WitnessReport::details);

    mod.def("tightness_witness", &tightness_witness);
    mod.def("near_tightness_example", &near_tightness_example);

    py::class_<RaoBlackwellResult>(mod, "RaoBlackwellResult")
        .def_readonly("reduced", &RaoBlackwellResult::reduced)
        .def_readonly("mean_p_before", &RaoBlackwellResult::mean_p_before)
        .def_readonly("mean_p_after", &RaoBlackwellResult::mean_p_after)
        .def_readonly("mean_q_before", &RaoBlackwellResult::mean_q_before)
        .def_readonly("mean_q_after", &RaoBlackwellResult::mean_q_after)
        .def_readonly("mad_p_before", &RaoBlackwellResult::mad_p_before)
        .def_readonly("mad_p_after", &RaoBlackwellResult::mad_p_after)
        .def_readonly("mad_q_before", &RaoBlackwellResult::mad_q_before)
        .def_readonly("mad_q_after", &RaoBlackwellResult::mad_q_after);

    mod.def("rao_blackwell_reduce",
            [](const FiniteRV& x, const std::vector<std::size_t>& a,
               const DiscreteMeasure& p, const DiscreteMeasure& q) {
                return rao_blackwell_reduce(
                    x, std::set<std::size_t>(a.begin(), a.end()), p, q);
            });

    py::class_<SearchResult>(mod, "SearchResult")
        .def_readonly("best_ratio", &SearchResult::best_ratio)
        .def_readonly("iterations", &SearchResult::iterations)
        .def_readonly("seed", &SearchResult::seed)
        .def_property_readonly("best_u",
                               [](const SearchResult& r) { return r.best.u; })
        .def_property_readonly("best_v",
                               [](const SearchResult& r) { return r.best.v; });
    mod.def("tightness_search", &tightness_search, py::arg("space_size"),
            py::arg("iterations"), py::arg("seed"));

    py::class_<GridFunction>(mod, "GridFunction")
        .def(py::init<std::size_t, std::vector<double>>())
        .def_static("zero", &GridFunction::zero)
        .def_property_readonly("values", &GridFunction::values)
        .def("value_at", &GridFunction::value_at)
        .def("l2_norm_sq", &GridFunction::l2_norm_sq)
        .def("__len__", &GridFunction::size);

    mod.def("hellinger_sq_gwn", &hellinger_sq_gwn);

    py::class_<KernelSpec>(mod, "KernelSpec")
        .def_readonly("beta", &KernelSpec::beta)
        .def_readonly("support_radius", &KernelSpec::support_radius)
        .def_readonly("l2_norm_sq", &KernelSpec::l2_norm_sq)
        .def_readonly("holder_norm", &KernelSpec::holder_norm)
        .def("__call__",
             [](const KernelSpec& k, double x) { return k.eval(x); });
    mod.def("bump_kernel", &bump_kernel, py::arg("beta"));
    mod.def("holder_norm",
            [](const GridFunction& f, double beta) { return holder_norm(f, beta); });

    py::class_<FamilySpec>(mod, "FamilySpec")
        .def_readonly("beta", &FamilySpec::beta)
        .def_readonly("V", &FamilySpec::V)
        .def_readonly("r_n", &FamilySpec::r_n)
        .def_readonly("theta", &FamilySpec::theta);
    mod.def("make_family_spec", &make_family_spec, py::arg("beta"),
            py::arg("R"), py::arg("C"), py::arg("kernel"), py::arg("n"),
            py::arg("theta"), py::arg("x0") = 0.5);
    mod.def("build_family_member", &build_family_member);

    py::class_<SimConfig>(mod, "SimConfig")
        .def(py::init([](double n, std::size_t m, std::size_t replicates,
                         std::uint64_t seed) {
                 return SimConfig{n, m, replicates, seed};
             }),
             py::arg("n"), py::arg("m") = 1024, py::arg("replicates") = 10000,
             py::arg("seed") = 0);

    py::class_<RiskEstimate>(mod, "RiskEstimate")
        .def_readonly("bias", &RiskEstimate::bias)
        .def_readonly("bias_se", &RiskEstimate::bias_se)
        .def_readonly("mad_mean", &RiskEstimate::mad_mean)
        .def_readonly("mad_mean_se", &RiskEstimate::mad_mean_se)
        .def_readonly("mad_median", &RiskEstimate::mad_median)
        .def_readonly("mad_median_se", &RiskEstimate::mad_median_se)
        .def_readonly("variance", &RiskEstimate::variance)
        .def_readonly("variance_se", &RiskEstimate::variance_se)
        .def_readonly("exact", &RiskEstimate::exact);

    py::class_<EstimatorSpec>(mod, "EstimatorSpec")
        .def_readonly("x0", &EstimatorSpec::x0)
        .def_readonly("bandwidth", &EstimatorSpec::bandwidth)
        .def_readonly("weights", &EstimatorSpec::weights);
    mod.def("make_kernel_estimator", &make_kernel_estimator);
    mod.def("exact_linear_risk", &exact_linear_risk);

    py::class_<FrontierSpec>(mod, "FrontierSpec")
        .def(py::init([](double beta, double R, double C, double x0,
                         const KernelSpec& kernel) {
                 return FrontierSpec{beta, R, C, x0, kernel};
             }),
             py::arg("beta"), py::arg("R"), py::arg("C"), py::arg("x0"),
             py::arg("kernel"));

    py::class_<FrontierConstants>(mod, "FrontierConstants")
        .def_readonly("c", &FrontierConstants::c)
        .def_readonly("N", &FrontierConstants::N);
    mod.def("theorem1_constants", &theorem1_constants);

    py::class_<FrontierPoint>(mod, "FrontierPoint")
        .def_readonly("n", &FrontierPoint::n)
        .def_readonly("psi_n", &FrontierPoint::psi_n)
        .def_readonly("bias_budget", &FrontierPoint::bias_budget)
        .def_readonly("mad_lower", &FrontierPoint::mad_lower)
        .def_readonly("r_n", &FrontierPoint::r_n)
        .def_readonly("valid", &FrontierPoint::valid);
    mod.def("mad_frontier", &mad_frontier);
}
