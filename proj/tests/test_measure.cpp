#include <doctest.h>

#include <cmath>
#include <limits>

#include "madtradeoff/measure.hpp"
#include "madtradeoff/rng.hpp"
#include "madtradeoff/witness.hpp"

using namespace madt;

TEST_CASE("discrete measure validation") {
    CHECK_THROWS(DiscreteMeasure::from_weights({0.5, 0.6}));
    CHECK_THROWS(DiscreteMeasure::from_weights({-0.1, 1.1}));
    CHECK_THROWS(DiscreteMeasure({"a", "a"}, {0.5, 0.5}));
    const auto m = DiscreteMeasure::from_weights({0.25, 0.75});
    CHECK(m.size() == 2);
    CHECK(m[1] == doctest::Approx(0.75));
}

TEST_CASE("hellinger_sq_discrete closed cases") {
    const auto p = DiscreteMeasure::from_weights({0.9, 0.1});
    const auto q = DiscreteMeasure::from_weights({0.5, 0.5});
    CHECK(hellinger_sq_discrete(p, p) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(hellinger_sq_discrete(DiscreteMeasure::from_weights({1.0, 0.0}),
                                DiscreteMeasure::from_weights({0.0, 1.0})) ==
          doctest::Approx(1.0));
    // 1 - (sqrt(0.45) + sqrt(0.05))
    CHECK(hellinger_sq_discrete(p, q) ==
          doctest::Approx(1.0 - std::sqrt(0.45) - std::sqrt(0.05)).epsilon(1e-12));
    CHECK_THROWS(hellinger_sq_discrete(
        p, DiscreteMeasure::from_weights({0.5, 0.25, 0.25})));
}

TEST_CASE("hellinger symmetry and identity on random pairs") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const auto inst = random_lemma_instance(rng, 2 + rng.below(10));
        const double a = hellinger_sq_discrete(inst.p, inst.q);
        const double b = hellinger_sq_discrete(inst.q, inst.p);
        CHECK(a == doctest::Approx(b).epsilon(1e-14));
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
}

TEST_CASE("hellinger triangle inequality on random triples") {
    Rng rng(12);
    for (int t = 0; t < 500; ++t) {
        const std::size_t size = 2 + rng.below(8);
        const auto i1 = random_lemma_instance(rng, size);
        const auto i2 = random_lemma_instance(rng, size);
        const double hpq = std::sqrt(hellinger_sq_discrete(i1.p, i1.q));
        const double hpr = std::sqrt(hellinger_sq_discrete(i1.p, i2.p));
        const double hrq = std::sqrt(hellinger_sq_discrete(i2.p, i1.q));
        CHECK(hpq <= hpr + hrq + 1e-12);
    }
}

TEST_CASE("gaussian location hellinger") {
    CHECK(hellinger_sq_gaussian_location(0.0) == 0.0);
    CHECK(hellinger_sq_gaussian_location(2.0) ==
          doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-14));
    CHECK(hellinger_sq_gaussian_location(1e6) == doctest::Approx(1.0));
}

TEST_CASE("gaussian location matches quadrature of the hellinger integral") {
    // 1 - integral of sqrt(phi_0 phi_delta), dense midpoint rule
    const double delta = 2.0;
    const int n = 400000;
    const double lo = -12.0, hi = 14.0;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / n;
        const double p = std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI);
        const double d = x - delta;
        const double q = std::exp(-d * d / 2.0) / std::sqrt(2.0 * M_PI);
        acc += std::sqrt(p * q) * (hi - lo) / n;
    }
    CHECK(hellinger_sq_gaussian_location(delta) ==
          doctest::Approx(1.0 - acc).epsilon(1e-8));
}

TEST_CASE("product gaussian hellinger") {
    CHECK(hellinger_sq_product_gaussian({1.0, 2.0}, {1.0, 2.0}, 1.0) == 0.0);
    CHECK(hellinger_sq_product_gaussian({2.0}, {0.0}, 1.0) ==
          doctest::Approx(hellinger_sq_gaussian_location(2.0)).epsilon(1e-14));
    // single coordinate equals the location form after rescaling the gap
    const double gap = 1.3, var = 2.7;
    CHECK(hellinger_sq_product_gaussian({gap}, {0.0}, var) ==
          doctest::Approx(hellinger_sq_gaussian_location(gap / std::sqrt(var)))
              .epsilon(1e-14));
    CHECK_THROWS(hellinger_sq_product_gaussian({1.0}, {1.0, 2.0}, 1.0));
}

TEST_CASE("lr ratio norms") {
    const auto p = DiscreteMeasure::from_weights({0.9, 0.1});
    const auto q = DiscreteMeasure::from_weights({0.5, 0.5});
    const auto rep = lr_ratio_norms(p, q);
    CHECK(rep.lr_min_norm == doctest::Approx(4.0));
    CHECK(rep.lr_max_norm == doctest::Approx(0.8));

    const auto rep2 = lr_ratio_norms(DiscreteMeasure::from_weights({1.0, 0.0}),
                                     DiscreteMeasure::from_weights({0.5, 0.5}));
    CHECK(std::isinf(rep2.lr_min_norm));
    CHECK(rep2.lr_max_norm == doctest::Approx(1.0));

    const auto rep3 = lr_ratio_norms(p, p);
    CHECK(rep3.lr_min_norm == 0.0);
    CHECK(rep3.lr_max_norm == 0.0);
}

TEST_CASE("lr norm ordering on random pairs") {
    Rng rng(13);
    for (int t = 0; t < 500; ++t) {
        const auto inst = random_lemma_instance(rng, 2 + rng.below(10));
        const auto rep = lr_ratio_norms(inst.p, inst.q);
        CHECK(rep.lr_max_norm <= 1.0 + 1e-15);
        CHECK(rep.lr_max_norm <= rep.lr_min_norm + 1e-15);
    }
}

TEST_CASE("expectation helpers") {
    const auto p = DiscreteMeasure::from_weights({0.9, 0.1});
    const FiniteRV x{{0.0, 1.0}};
    CHECK(expectation(p, x) == doctest::Approx(0.1));
    // Bernoulli mean-MAD is 2p(1-p)
    CHECK(abs_deviation(p, x, 0.1) == doctest::Approx(0.18));
    CHECK(variance(p, x) == doctest::Approx(0.09));
    CHECK_THROWS(expectation(p, FiniteRV{{1.0, 2.0, 3.0}}));
}
