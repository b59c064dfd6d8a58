#include <doctest.h>

#include <cmath>
#include <random>

#include "olk/duality.hpp"
#include "olk/modular.hpp"

using namespace olk;

TEST_CASE("Amemiya formula on an indicator") {
    // inf_k (1 + k^2) / k = 2 at k = 1.
    const auto r = orlicz_norm_amemiya(StepFn::indicator(1.0), Weight::constant(1.0), OrliczFn::power(2.0));
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r.amemiya_k == doctest::Approx(1.0).epsilon(1e-5));
    const auto f = orlicz_norm_amemiya(StepFn::indicator(1.0), Weight::constant(1.0),
                                       [](double t) { return t * t; });
    CHECK(f.value == doctest::Approx(r.value).epsilon(1e-12));
    CHECK_THROWS(orlicz_norm_amemiya(StepFn::indicator(1.0), Weight::constant(1.0), OrliczFn::expm1()));
}

TEST_CASE("Amemiya against a brute-force scan over k") {
    const StepFn f({0.0, 0.5, 2.0, kInf}, {3.0, 1.0, 0.0});
    const Weight w = Weight::power(0.5);
    const OrliczFn star = OrliczFn::power(3.0);
    // f is already decreasing; W(t) = 2 sqrt(t).
    const double w_a = 2.0 * std::sqrt(0.5), w_b = 2.0 * std::sqrt(2.0) - w_a;
    double best = kInf;
    for (int i = 1; i <= 200000; ++i) {
        const double k = i * 1e-5;
        best = std::min(best, (1.0 + star(3.0 * k) * w_a + star(k) * w_b) / k);
    }
    CHECK(orlicz_norm_amemiya(f, w, star).value == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("norming supremum attains the Amemiya value for powers") {
    const OrliczFn phi = OrliczFn::power_normalized(2.0);
    const auto am = orlicz_norm_amemiya(StepFn::indicator(1.0), Weight::constant(1.0), phi.conjugate_function());
    const auto sup = norming_supremum(StepFn::indicator(1.0), Weight::constant(1.0), phi);
    CHECK(am.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(sup.value == doctest::Approx(am.value).epsilon(1e-8));
    CHECK(sup.modular == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_FALSE(sup.stalled);
    REQUIRE(sup.attainer.has_value());

    const StepFn f({0.0, 0.5, 2.0, kInf}, {3.0, 1.0, 0.0});
    const Weight w = Weight::step(StepFn({0.0, 1.0, 2.5, kInf}, {3.0, 2.0, 1.0}));
    const OrliczFn cube = OrliczFn::power(3.0);
    const auto a2 = orlicz_norm_amemiya(f, w, [&](double t) { return cube.conjugate(t); });
    const auto s2 = norming_supremum(f, w, cube);
    CHECK(s2.value <= a2.value * (1 + 1e-9));
    CHECK(s2.value >= 0.95 * a2.value);
}

TEST_CASE("Holder pairing") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Weight w = Weight::power(0.5);
    for (double p : {1.5, 2.0, 3.0}) {
        const OrliczFn phi = OrliczFn::power(p);
        for (int rep = 0; rep < 10; ++rep) {
            const StepFn f({0.0, 0.5 + u(rng), 2.0 + u(rng), kInf}, {3 * u(rng), 3 * u(rng), 0.0});
            const StepFn g({0.0, 0.2 + u(rng), 1.5 + u(rng), kInf}, {3 * u(rng), 3 * u(rng), 0.0});
            const auto s = holder_pairing(f, g, w, phi);
            CHECK(s.pairing <= s.bound * (1 + 1e-6));
        }
    }
    CHECK_THROWS(holder_pairing(StepFn::indicator(1.0), StepFn::indicator(1.0), w, OrliczFn::power(1.0)));
}

TEST_CASE("trivial dual probe for w = 1/t") {
    const auto probe = trivial_dual_probe(1.0, Weight::power(1.0), OrliczFn::power(2.0));
    CHECK(probe.diverged);
    CHECK(probe.modular_bounded);
    REQUIRE_FALSE(probe.steps.empty());
    CHECK(probe.steps.back().pairing > 1e3);
    for (const auto& s : probe.steps) CHECK(s.modular <= 1.0 + 1e-12);
    CHECK_THROWS_AS(trivial_dual_probe(1.0, Weight::power(1.0), OrliczFn::power(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(trivial_dual_probe(1.0, Weight::power(0.5), OrliczFn::power(2.0)), std::invalid_argument);
}
