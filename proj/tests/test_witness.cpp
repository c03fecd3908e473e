#include <doctest.h>

#include <cmath>

#include "madtradeoff/rng.hpp"
#include "madtradeoff/witness.hpp"

using namespace madt;

TEST_CASE("tightness witness selects the maximizing atom") {
    const auto rep = tightness_witness(DiscreteMeasure::from_weights({0.9, 0.1}),
                                       DiscreteMeasure::from_weights({0.5, 0.5}));
    REQUIRE(rep.selected_atom.has_value());
    CHECK(*rep.selected_atom == 1);
    CHECK(rep.details.at("mad_p") == doctest::Approx(0.18));
    CHECK(rep.details.at("mad_q") == doctest::Approx(0.5));
    CHECK(rep.details.at("literal_bound") == doctest::Approx(0.5));
    CHECK(rep.literal_bound_holds);  // equality case
    CHECK(rep.adjusted_bound_holds);
}

TEST_CASE("literal bound counterexample, adjusted bound rescues it") {
    const auto rep = tightness_witness(DiscreteMeasure::from_weights({0.7, 0.3}),
                                       DiscreteMeasure::from_weights({0.6, 0.4}));
    REQUIRE(rep.selected_atom.has_value());
    CHECK(*rep.selected_atom == 1);
    CHECK(rep.details.at("mad_p") == doctest::Approx(0.42));
    CHECK(rep.details.at("mad_q") == doctest::Approx(0.48));
    CHECK(rep.details.at("literal_bound") == doctest::Approx(0.4));
    CHECK_FALSE(rep.literal_bound_holds);  // 0.48 > 0.4
    CHECK(rep.adjusted_bound_holds);       // 0.48 <= 0.8
}

TEST_CASE("tightness witness vacuous input") {
    const auto p = DiscreteMeasure::from_weights({0.3, 0.7});
    const auto rep = tightness_witness(p, p);
    CHECK(rep.vacuous);
    CHECK_FALSE(rep.selected_atom.has_value());
}

TEST_CASE("adjusted bound on exhaustive two-point grid") {
    for (int pi = 1; pi < 100; ++pi)
        for (int qi = 1; qi < 100; ++qi) {
            if (pi == qi) continue;
            const auto rep = tightness_witness(
                DiscreteMeasure::from_weights({pi / 100.0, 1.0 - pi / 100.0}),
                DiscreteMeasure::from_weights({qi / 100.0, 1.0 - qi / 100.0}));
            CHECK(rep.adjusted_bound_holds);
        }
}

TEST_CASE("indicator MAD identity on a p-grid") {
    for (int pi = 0; pi <= 100; ++pi) {
        const double p = pi / 100.0;
        const auto meas = DiscreteMeasure::from_weights({1.0 - p, p});
        const FiniteRV ind{{0.0, 1.0}};
        CHECK(expectation(meas, ind) == doctest::Approx(p));
        CHECK(abs_deviation(meas, ind, p) ==
              doctest::Approx(2.0 * p * (1.0 - p)));
    }
}

TEST_CASE("rao blackwell pinned three-atom example") {
    const auto res = rao_blackwell_reduce(
        FiniteRV{{1.0, 2.0, 3.0}}, {0, 2},
        DiscreteMeasure::from_weights({1.0 / 3, 1.0 / 3, 1.0 / 3}),
        DiscreteMeasure::from_weights({0.25, 0.5, 0.25}));
    CHECK(res.reduced.values == std::vector<double>{2.0, 2.0, 2.0});
    CHECK(res.mean_p_after == doctest::Approx(res.mean_p_before));
    CHECK(res.mean_q_after == doctest::Approx(res.mean_q_before));
    CHECK(res.mad_p_before == doctest::Approx(2.0 / 3.0));
    CHECK(res.mad_p_after == doctest::Approx(0.0));
    CHECK(res.mad_q_after <= res.mad_q_before);
}

TEST_CASE("rao blackwell full collapse and boundary cases") {
    const auto p = DiscreteMeasure::from_weights({0.5, 0.5});
    const auto q = DiscreteMeasure::from_weights({0.5, 0.5});
    const FiniteRV x{{1.0, 3.0}};
    const auto res = rao_blackwell_reduce(x, {0, 1}, p, q);
    CHECK(res.reduced.values == std::vector<double>{2.0, 2.0});
    CHECK(res.mad_p_after == doctest::Approx(0.0));

    CHECK_THROWS(rao_blackwell_reduce(x, {}, p, q));  // zero probability
    // conditional mean mismatch
    const auto q2 = DiscreteMeasure::from_weights({0.9, 0.1});
    CHECK_THROWS(rao_blackwell_reduce(x, {0, 1}, p, q2));
    // zero probability event under one measure
    const auto q3 = DiscreteMeasure::from_weights({1.0, 0.0});
    CHECK_THROWS(rao_blackwell_reduce(x, {1}, p, q3));
}

TEST_CASE("near tightness example ratios") {
    const auto p = DiscreteMeasure::from_weights({0.9, 0.1});
    const auto same = near_tightness_example(p, p, 1.0, 0.0);
    CHECK(same.context.at("ratio") == doctest::Approx(5.0));

    const auto q = DiscreteMeasure::from_weights({0.5, 0.5});
    const double h2 = hellinger_sq_discrete(p, q);
    const auto rep = near_tightness_example(p, q, 1.0, 0.0);
    CHECK(rep.context.at("ratio") ==
          doctest::Approx(5.0 / ((1 - h2) * (1 - h2))));
    CHECK(rep.context.at("ratio") ==
          doctest::Approx(rep.context.at("ratio_closed_form")));

    CHECK_THROWS(near_tightness_example(
        DiscreteMeasure::from_weights({1.0, 0.0}),
        DiscreteMeasure::from_weights({0.0, 1.0}), 1.0, 0.0));
}

TEST_CASE("tightness search basics") {
    const auto res0 = tightness_search(2, 0, 1);
    CHECK(res0.best_ratio >= 0.0);
    CHECK(res0.best_ratio <= 1.0 + 1e-12);

    const auto res = tightness_search(2, 20000, 42);
    CHECK(res.best_ratio <= 1.0 + 1e-12);
    CHECK(res.best_ratio >= res0.best_ratio * 0.0);
    // search approaches the constant-X family ratio (1/5)(1-H^2)^2
    CHECK(res.best_ratio >= 0.15);
    for (const auto& [it, ratio] : res.trace) CHECK(ratio <= 1.0 + 1e-12);

    // deterministic given the seed
    const auto res2 = tightness_search(2, 20000, 42);
    CHECK(res.best_ratio == res2.best_ratio);
    CHECK_THROWS(tightness_search(1, 10, 0));
    CHECK_THROWS(tightness_search(51, 10, 0));
}
