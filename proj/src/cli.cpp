#include "madtradeoff/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "madtradeoff/frontier.hpp"
#include "madtradeoff/rng.hpp"
#include "madtradeoff/serialize.hpp"

namespace madt::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

struct Emitter {
    fs::path out_dir;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;

    json meta() const {
        std::ostringstream hash;
        hash << std::hex << config_hash;
        return json{{"tool_version", kVersion},
                    {"config_hash", hash.str()},
                    {"seed", seed}};
    }

    // temp file + rename, so readers never see partial output
    void write(const std::string& name, const std::string& content) const {
        fs::create_directories(out_dir);
        const fs::path target = out_dir / name;
        const fs::path tmp = out_dir / (name + ".tmp");
        {
            std::ofstream f(tmp, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + tmp.string());
            f << content;
        }
        fs::rename(tmp, target);
    }

    void write_json(const std::string& name, json j) const {
        j["meta"] = meta();
        write(name, j.dump(2) + "\n");
    }

    std::string csv_header() const {
        std::ostringstream hash;
        hash << std::hex << config_hash;
        return "# tool_version=" + std::string(kVersion) +
               "\n# config_hash=" + hash.str() +
               "\n# seed=" + std::to_string(seed) + "\n";
    }
};

void print_table(std::ostream& out, const std::vector<InequalityReport>& reps) {
    out << std::left << std::setw(24) << "name" << std::setw(16) << "lhs"
        << std::setw(16) << "rhs" << std::setw(16) << "slack"
        << "holds\n";
    for (const auto& r : reps) {
        out << std::left << std::setw(24) << r.name << std::setw(16)
            << std::setprecision(8) << r.lhs << std::setw(16) << r.rhs
            << std::setw(16) << r.slack << (r.holds ? "yes" : "NO") << "\n";
    }
}

struct Violation {
    std::string suite;
    std::string what;
    json detail;
};

// ---------------------------------------------------------------- suites

void run_random_suites(std::uint64_t trials, std::uint64_t seed,
                       std::size_t space_min, std::size_t space_max,
                       std::vector<Violation>& violations,
                       json& suite_summary) {
    Rng rng(seed, 100);
    double min_slack_l2 = 1e300, min_slack_l1 = 1e300, min_slack_l3 = 1e300;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::size_t size =
            space_min + rng.below(space_max - space_min + 1);
        const SearchInstance inst = random_lemma_instance(rng, size);

        const InequalityReport l2 =
            check_lemma2(inst.p, inst.q, inst.x, inst.u, inst.v);
        min_slack_l2 = std::min(min_slack_l2, l2.slack);
        if (!l2.holds)
            violations.push_back({"lemma2", "random instance", to_json(l2)});

        const InequalityReport cs =
            check_cauchy_schwarz_step(inst.p, inst.q, inst.x, inst.u, inst.v);
        if (!cs.holds)
            violations.push_back(
                {"cauchy_schwarz", "random instance", to_json(cs)});

        // proof-chain consistency: d b <= 2 sqrt(a^2 + a b)
        const double a = std::max(abs_deviation(inst.p, inst.x, inst.v),
                                  abs_deviation(inst.q, inst.x, inst.u));
        const double b = std::fabs(inst.u - inst.v);
        const double d = 1.0 - hellinger_sq_discrete(inst.p, inst.q);
        const double chain_rhs = 2.0 * std::sqrt(a * a + a * b);
        if (d * b > chain_rhs + default_tolerance(d * b, chain_rhs))
            violations.push_back(
                {"proof_chain", "d*b > 2*sqrt(a^2+ab)",
                 json{{"a", a}, {"b", b}, {"d", d}}});

        const InequalityReport means =
            check_special_case_means(inst.p, inst.q, inst.x);
        if (!means.holds)
            violations.push_back({"lemma2_means", "random instance",
                                  to_json(means)});

        const InequalityReport l1 =
            check_lemma1_variance(inst.p, inst.q, inst.x);
        min_slack_l1 = std::min(min_slack_l1, l1.slack);
        if (!l1.holds)
            violations.push_back(
                {"lemma1_variance", "random instance", to_json(l1)});

        const InequalityReport l3 = check_lemma3_first(inst.p, inst.q, inst.x);
        min_slack_l3 = std::min(min_slack_l3, l3.slack);
        if (!l3.holds)
            violations.push_back(
                {"lemma3_first", "random instance", to_json(l3)});
    }
    suite_summary["random_trials"] = trials;
    suite_summary["min_slack_lemma2"] = min_slack_l2;
    suite_summary["min_slack_lemma1"] = min_slack_l1;
    suite_summary["min_slack_lemma3_first"] = min_slack_l3;
}

void run_quadratic_grid(std::vector<Violation>& violations,
                        json& suite_summary) {
    const int points = 10000;
    double min_slack = 1e300;
    for (int i = 0; i <= points; ++i) {
        const double d = static_cast<double>(i) / points;
        const auto [first, second] = check_quadratic_chain(1.0, 1.0, d);
        min_slack = std::min(min_slack, second.slack);
        if (!first.holds || !second.holds)
            violations.push_back({"quadratic_chain",
                                  "grid point d=" + std::to_string(d),
                                  json{{"d", d}}});
    }
    suite_summary["quadratic_grid_points"] = points + 1;
    suite_summary["quadratic_min_slack"] = min_slack;
}

void run_witness_suites(std::uint64_t seed, bool include_literal,
                        std::vector<Violation>& violations,
                        json& suite_summary) {
    // exhaustive two-point sweep on a 0.01 grid
    std::uint64_t literal_failures = 0;
    for (int pi = 1; pi < 100; ++pi)
        for (int qi = 1; qi < 100; ++qi) {
            const double p = pi / 100.0, q = qi / 100.0;
            if (p == q) continue;
            const auto rep = tightness_witness(
                DiscreteMeasure::from_weights({p, 1.0 - p}),
                DiscreteMeasure::from_weights({q, 1.0 - q}));
            if (!rep.adjusted_bound_holds)
                violations.push_back(
                    {"witness_adjusted", "two-point grid",
                     json{{"p", p}, {"q", q}}});
            if (!rep.literal_bound_holds) {
                ++literal_failures;
                if (include_literal)
                    violations.push_back(
                        {"witness_literal", "two-point grid",
                         json{{"p", p}, {"q", q}, {"details", rep.details}}});
            }
        }
    // random larger spaces
    Rng rng(seed, 200);
    for (int t = 0; t < 10000; ++t) {
        const std::size_t size = 2 + rng.below(19);
        const SearchInstance inst = random_lemma_instance(rng, size);
        const auto rep = tightness_witness(inst.p, inst.q);
        if (!rep.vacuous && !rep.adjusted_bound_holds)
            violations.push_back({"witness_adjusted", "random space",
                                  json{{"size", size}}});
    }
    suite_summary["witness_literal_failures_on_grid"] = literal_failures;
    if (include_literal) {
        // pinned counterexample to the literal bound
        const auto pinned = tightness_witness(
            DiscreteMeasure::from_weights({0.7, 0.3}),
            DiscreteMeasure::from_weights({0.6, 0.4}));
        suite_summary["pinned_counterexample"] = to_json(pinned);
        if (!pinned.literal_bound_holds)
            violations.push_back({"witness_literal",
                                  "pinned instance P=(0.7,0.3) Q=(0.6,0.4)",
                                  to_json(pinned)});
    }
}

// --------------------------------------------------------- rao-blackwell

SearchInstance random_rb_instance(Rng& rng, std::size_t size,
                                  std::set<std::size_t>& a) {
    while (true) {
        SearchInstance inst = random_lemma_instance(rng, size);
        a.clear();
        for (std::size_t j = 0; j < size; ++j)
            if (rng.uniform() < 0.5) a.insert(j);
        if (a.empty()) a.insert(rng.below(size));
        if (a.size() == 1) return inst;
        // force matching conditional means by solving for one coordinate
        const std::size_t j0 = *a.begin();
        double pa = 0, qa = 0, sp = 0, sq = 0;
        for (std::size_t j : a) {
            pa += inst.p[j];
            qa += inst.q[j];
            if (j != j0) {
                sp += inst.p[j] * inst.x.values[j];
                sq += inst.q[j] * inst.x.values[j];
            }
        }
        const double coeff = inst.p[j0] / pa - inst.q[j0] / qa;
        if (std::fabs(coeff) < 1e-6) continue;
        inst.x.values[j0] = (sq / qa - sp / pa) / coeff;
        if (std::fabs(inst.x.values[j0]) > 1e4) continue;
        return inst;
    }
}

json run_rao_blackwell_trials(std::uint64_t trials, std::uint64_t seed,
                              std::vector<Violation>& violations) {
    Rng rng(seed, 300);
    double worst_mean_drift = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::size_t size = 2 + rng.below(19);
        std::set<std::size_t> a;
        const SearchInstance inst = random_rb_instance(rng, size, a);
        const RaoBlackwellResult res =
            rao_blackwell_reduce(inst.x, a, inst.p, inst.q);
        const double drift =
            std::max(std::fabs(res.mean_p_after - res.mean_p_before),
                     std::fabs(res.mean_q_after - res.mean_q_before));
        worst_mean_drift = std::max(worst_mean_drift, drift);
        if (drift > 1e-9)
            violations.push_back({"rao_blackwell", "mean not preserved",
                                  json{{"drift", drift}}});
        const double tol =
            default_tolerance(res.mad_p_before, res.mad_q_before);
        if (res.mad_p_after > res.mad_p_before + tol ||
            res.mad_q_after > res.mad_q_before + tol)
            violations.push_back({"rao_blackwell", "MAD increased",
                                  json{{"mad_p_before", res.mad_p_before},
                                       {"mad_p_after", res.mad_p_after},
                                       {"mad_q_before", res.mad_q_before},
                                       {"mad_q_after", res.mad_q_after}}});
    }

    // pinned three-atom example with a strict decrease
    const auto pinned = rao_blackwell_reduce(
        FiniteRV{{1.0, 2.0, 3.0}}, {0, 2},
        DiscreteMeasure::from_weights({1.0 / 3, 1.0 / 3, 1.0 / 3}),
        DiscreteMeasure::from_weights({0.25, 0.5, 0.25}));
    json j;
    j["trials"] = trials;
    j["worst_mean_drift"] = worst_mean_drift;
    j["pinned"] = json{{"mad_p_before", pinned.mad_p_before},
                       {"mad_p_after", pinned.mad_p_after},
                       {"mad_q_before", pinned.mad_q_before},
                       {"mad_q_after", pinned.mad_q_after},
                       {"reduced", pinned.reduced.values}};
    if (!(pinned.mad_p_after < pinned.mad_p_before))
        violations.push_back({"rao_blackwell", "pinned example not strict",
                              j["pinned"]});
    return j;
}

json violations_to_json(const std::vector<Violation>& violations) {
    json arr = json::array();
    for (const auto& v : violations)
        arr.push_back(json{{"suite", v.suite}, {"what", v.what},
                           {"detail", v.detail}});
    return arr;
}

// --------------------------------------------------------------- frontier

std::string frontier_csv(const ExperimentResult& res, const Emitter& em) {
    std::ostringstream csv;
    csv << em.csv_header();
    csv << "n,gamma,bandwidth,sup_abs_bias,sup_mad_mean,sup_mad_median,"
           "variance,compliant,valid,bias_budget,mad_lower,"
           "eq_lhs_plus,eq_lhs_minus,eq_rhs\n";
    for (const auto& c : res.cells) {
        csv << fmt17(c.n) << ',' << fmt17(c.gamma) << ','
            << fmt17(c.bandwidth) << ',' << fmt17(c.sup_abs_bias) << ','
            << fmt17(c.sup_mad_mean) << ',' << fmt17(c.sup_mad_median) << ','
            << fmt17(c.variance) << ',' << (c.compliant ? 1 : 0) << ','
            << (c.valid ? 1 : 0) << ',' << fmt17(c.bias_budget) << ','
            << fmt17(c.mad_lower) << ',' << fmt17(c.eq_lhs_plus) << ','
            << fmt17(c.eq_lhs_minus) << ',' << fmt17(c.eq_rhs) << '\n';
    }
    return csv.str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"bias-MAD trade-off verification toolkit"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "read options from an ini-style file");
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    std::string out_dir = ".";
    std::string format = "json";
    std::uint64_t seed = 7;
    unsigned threads = 0;
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--threads", threads, "worker cap (0 = auto)");

    // check-inequalities
    auto* chk = app.add_subcommand("check-inequalities",
                                   "randomized inequality suites");
    std::uint64_t trials = 10000;
    std::size_t space_min = 2, space_max = 20;
    bool include_literal = false;
    chk->add_option("--trials", trials, "random instances per suite")
        ->capture_default_str();
    chk->add_option("--space-min", space_min, "")->capture_default_str();
    chk->add_option("--space-max", space_max, "")->capture_default_str();
    chk->add_flag("--include-lemma3-literal", include_literal,
                  "also check the literal witness bound (known to fail)");

    // tightness-search
    auto* ts = app.add_subcommand("tightness-search",
                                  "randomized search for the sharpest ratio");
    std::size_t space_size = 2;
    std::uint64_t iterations = 10000;
    ts->add_option("--space-size", space_size, "")->capture_default_str();
    ts->add_option("--iterations", iterations, "")->capture_default_str();

    // rao-blackwell
    auto* rb = app.add_subcommand("rao-blackwell",
                                  "verify the conditional-mean reduction");
    std::uint64_t rb_trials = 1000;
    rb->add_option("--trials", rb_trials, "")->capture_default_str();

    // shared model parameters
    double beta = 1.0, R = 1.0, C = 1.0, x0 = 0.5;
    std::size_t m = 1024, replicates = 10000;
    double n_single = 4096.0;
    std::vector<double> n_list;
    std::vector<double> gammas;

    // gwn-experiment
    auto* gwn = app.add_subcommand("gwn-experiment",
                                   "Monte Carlo risk of kernel estimators");
    gwn->add_option("--beta", beta, "")->capture_default_str();
    gwn->add_option("--R", R, "")->capture_default_str();
    gwn->add_option("--C", C, "")->capture_default_str();
    gwn->add_option("--x0", x0, "")->capture_default_str();
    gwn->add_option("--n", n_single, "noise level")->capture_default_str();
    gwn->add_option("--m", m, "bin count")->capture_default_str();
    gwn->add_option("--replicates", replicates, "")->capture_default_str();
    gwn->add_option("--bandwidths", gammas,
                    "bandwidth multipliers, h = g * n^{-1/(2 beta + 1)}");

    // frontier
    auto* fr = app.add_subcommand("frontier",
                                  "trade-off experiment and frontier check");
    fr->add_option("--beta", beta, "")->capture_default_str();
    fr->add_option("--R", R, "")->capture_default_str();
    fr->add_option("--C", C, "")->capture_default_str();
    fr->add_option("--x0", x0, "")->capture_default_str();
    fr->add_option("--m", m, "bin count")->capture_default_str();
    fr->add_option("--n-list", n_list, "noise levels (default 2^10..2^16)");
    fr->add_option("--bandwidths", gammas,
                   "bandwidth multipliers, h = g * n^{-1/(2 beta + 1)}");

    // kernel-constants
    auto* kc = app.add_subcommand("kernel-constants",
                                  "bump kernel norm constants");
    kc->add_option("--beta", beta, "")->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("madcheck");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()),
                  const_cast<char**>(argv.data()));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::string canonical;
    for (const auto& a : args) canonical += a + "\x1f";
    Emitter em{fs::path(out_dir), seed, fnv1a(canonical)};

    try {
        std::vector<Violation> violations;

        if (chk->parsed()) {
            json report;
            run_random_suites(trials, seed, space_min, space_max, violations,
                              report);
            run_quadratic_grid(violations, report);
            run_witness_suites(seed, include_literal, violations, report);
            report["violations"] = violations_to_json(violations);
            em.write_json("inequalities.json", report);
            // headline table from one representative instance
            Rng rng(seed, 1);
            const SearchInstance inst = random_lemma_instance(rng, 3);
            print_table(
                out,
                {check_lemma2(inst.p, inst.q, inst.x, inst.u, inst.v),
                 check_cauchy_schwarz_step(inst.p, inst.q, inst.x, inst.u,
                                           inst.v),
                 check_special_case_means(inst.p, inst.q, inst.x),
                 check_lemma1_variance(inst.p, inst.q, inst.x),
                 check_lemma3_first(inst.p, inst.q, inst.x)});
            out << violations.size() << " violation(s) found\n";
        } else if (ts->parsed()) {
            const SearchResult res =
                tightness_search(space_size, iterations, seed);
            json j;
            j["space_size"] = space_size;
            j["iterations"] = iterations;
            j["best_ratio"] = res.best_ratio;
            j["best_instance"] = json{{"P", to_json(res.best.p)},
                                      {"Q", to_json(res.best.q)},
                                      {"X", res.best.x.values},
                                      {"u", res.best.u},
                                      {"v", res.best.v}};
            j["best_report"] = to_json(res.best_report);
            json trace = json::array();
            for (const auto& [it, ratio] : res.trace)
                trace.push_back(json{{"iteration", it}, {"ratio", ratio}});
            j["trace"] = trace;
            em.write_json("tightness_search.json", j);
            out << "best ratio " << res.best_ratio << " after " << iterations
                << " iterations\n";
        } else if (rb->parsed()) {
            json j = run_rao_blackwell_trials(rb_trials, seed, violations);
            j["violations"] = violations_to_json(violations);
            em.write_json("rao_blackwell.json", j);
            out << "rao-blackwell: " << violations.size()
                << " violation(s) in " << rb_trials << " trials\n";
        } else if (gwn->parsed()) {
            const KernelSpec kernel = bump_kernel(beta);
            FrontierSpec spec{beta, R, C, x0, kernel};
            if (gammas.empty()) gammas = default_gammas();
            SimConfig cfg{n_single, m, replicates, seed};
            const FamilySpec fplus =
                make_family_spec(beta, R, C, kernel, n_single, 1.0, x0);
            const FamilySpec fminus =
                make_family_spec(beta, R, C, kernel, n_single, -1.0, x0);
            const std::vector<std::pair<std::string, GridFunction>> family = {
                {"f_minus", build_family_member(fminus, kernel, m)},
                {"f_zero", GridFunction::zero(m)},
                {"f_plus", build_family_member(fplus, kernel, m)}};
            std::ostringstream csv;
            csv << em.csv_header();
            csv << "estimator_id,f_id,n,h,bias,bias_se,mad_mean,mad_mean_se,"
                   "mad_median,mad_median_se,variance,variance_se,exact\n";
            json jrows = json::array();
            const double h_unit = std::pow(n_single, -1.0 / (2.0 * beta + 1.0));
            for (double g : gammas) {
                const EstimatorSpec est =
                    make_kernel_estimator(kernel, x0, g * h_unit, m);
                const std::string est_id = "kernel_g" + std::to_string(g);
                for (const auto& [fid, f] : family) {
                    for (bool exact : {true, false}) {
                        RiskEstimate r =
                            exact ? exact_linear_risk(est, f, cfg)
                                  : mc_risk([&est](const Observation& o) {
                                        return linear_estimate(o, est);
                                    }, f, cfg, x0);
                        csv << est_id << ',' << fid << ',' << fmt17(n_single)
                            << ',' << fmt17(est.bandwidth) << ','
                            << fmt17(r.bias) << ',' << fmt17(r.bias_se) << ','
                            << fmt17(r.mad_mean) << ','
                            << fmt17(r.mad_mean_se) << ','
                            << fmt17(r.mad_median) << ','
                            << fmt17(r.mad_median_se) << ','
                            << fmt17(r.variance) << ','
                            << fmt17(r.variance_se) << ','
                            << (r.exact ? 1 : 0) << '\n';
                        json row = to_json(r);
                        row["estimator_id"] = est_id;
                        row["f_id"] = fid;
                        row["n"] = n_single;
                        row["h"] = est.bandwidth;
                        jrows.push_back(row);
                    }
                }
            }
            em.write("gwn_risk.csv", csv.str());
            if (format == "json")
                em.write_json("gwn_risk.json", json{{"rows", jrows}});
            out << "wrote gwn_risk.csv (" << jrows.size() << " rows)\n";
        } else if (fr->parsed()) {
            const KernelSpec kernel = bump_kernel(beta);
            FrontierSpec spec{beta, R, C, x0, kernel};
            if (n_list.empty()) n_list = default_n_sweep();
            if (gammas.empty()) gammas = default_gammas();
            SimConfig cfg{n_list.front(), m, replicates, seed};
            const ExperimentResult res =
                run_tradeoff_experiment(spec, cfg, n_list, gammas);
            em.write("frontier.csv", frontier_csv(res, em));
            json summary;
            summary["c"] = res.constants.c;
            summary["N"] = res.constants.N;
            summary["slope"] = res.slope;
            summary["compliant_count"] = res.compliant_count;
            json pts = json::array();
            for (const auto& p : res.frontier) pts.push_back(to_json(p));
            summary["frontier"] = pts;
            summary["violations"] = res.violations;
            em.write_json("frontier_summary.json", summary);
            out << "c = " << res.constants.c << ", N = " << res.constants.N
                << ", slope = " << res.slope << ", violations = "
                << res.violations.size() << "\n";
            if (!res.violations.empty()) return 2;
        } else if (kc->parsed()) {
            const KernelSpec kernel = bump_kernel(beta);
            json j{{"beta", beta},
                   {"l2_norm_sq", kernel.l2_norm_sq},
                   {"holder_norm", kernel.holder_norm},
                   {"V_for_R1", 1.0 / kernel.holder_norm},
                   {"K_at_zero", kernel.eval(0.0)}};
            em.write_json("kernel_constants.json", j);
            out << j.dump(2) << "\n";
        }

        if (!violations.empty()) return 2;
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace madt::cli
