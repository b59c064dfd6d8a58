#include <doctest.h>

#include <cmath>
#include <random>

#include "olk/modular.hpp"
#include "olk/rearrange.hpp"

using namespace olk;

TEST_CASE("sequence modular by hand") {
    CHECK(modular_m({8.0, 1.0}, {4.0, 1.0}, OrliczFn::power(2.0)).value() == doctest::Approx(17.0));
    CHECK(modular_m({1.0, 8.0}, {4.0, 1.0}, OrliczFn::power(2.0)).value() == doctest::Approx(17.0));
    // More nonzero entries than positive weights.
    CHECK(modular_m({1.0, 1.0}, {4.0}, OrliczFn::power(2.0)).is_inf());
}

TEST_CASE("zero-weight convention") {
    const OrliczFn phi = OrliczFn::power(2.0);
    const StepFn v({0.0, 1.0, 2.0}, {1.0, 0.0});
    CHECK(modular_Iv(StepFn({0.0, 1.0, 2.0}, {3.0, 0.0}), v, phi).value() == doctest::Approx(9.0));
    CHECK(modular_Iv(StepFn({0.0, 1.0, 2.0}, {3.0, 1e-9}), v, phi).is_inf());
}

TEST_CASE("weighted modular uses the decreasing rearrangement") {
    const OrliczFn phi = OrliczFn::power(2.0);
    const Weight w = Weight::step(StepFn({0.0, 1.0, 2.0, kInf}, {2.0, 1.0, 0.5}));
    const StepFn f({0.0, 1.0, 2.0, kInf}, {1.0, 4.0, 0.0});
    // f* = 4 on (0,1], 1 on (1,2]: 16/2 + 1/1.
    CHECK(modular_M(f, w, phi).value() == doctest::Approx(9.0));
}

TEST_CASE("Minkowski gauge") {
    CHECK(minkowski_gauge([](double e) { return ExtReal(1.0 / (e * e)); }, 1.0) == doctest::Approx(1.0));
    CHECK(minkowski_gauge([](double e) { return ExtReal(9.0 / e); }, 1.0) == doctest::Approx(9.0));
    CHECK(minkowski_gauge([](double e) { return ExtReal(9.0 / e); }, 1e-5) == doctest::Approx(9.0));
    CHECK(std::isinf(minkowski_gauge([](double) { return ExtReal::infinity(); }, 1.0)));
}

TEST_CASE("Luxemburg norm reduces to l_p for unit weights") {
    CHECK(luxemburg_norm(Seq{3.0, 4.0}, Seq{1.0, 1.0}, OrliczFn::power(2.0)) == doctest::Approx(5.0).epsilon(1e-14));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (double p : {1.0, 1.5, 3.0}) {
        std::vector<double> b{0.0}, v;
        double s = 0.0;
        for (int k = 0; k < 5; ++k) {
            b.push_back(b.back() + 0.1 + u(rng));
            v.push_back(u(rng));
            s += std::pow(v.back(), p) * (b.back() - b[b.size() - 2]);
        }
        b.push_back(kInf), v.push_back(0.0);
        CHECK(luxemburg_norm(StepFn(b, v), Weight::constant(1.0), OrliczFn::power(p)) ==
              doctest::Approx(std::pow(s, 1 / p)).epsilon(1e-12));
    }
}

TEST_CASE("superadditivity on disjoint supports") {
    const OrliczFn phi = OrliczFn::power(2.0);
    const Weight w = Weight::power(0.5);
    const StepFn f({0.0, 1.0, 2.0, kInf}, {3.0, 0.0, 0.0});
    const StepFn g({0.0, 1.0, 2.0, kInf}, {0.0, 2.0, 0.0});
    const auto [joint, separate] = check_superadditive(f, g, w, phi);
    CHECK(separate <= joint);
    CHECK_THROWS_AS(check_superadditive(f, f, w, phi), std::invalid_argument);
}

TEST_CASE("p-concavity") {
    const Weight w = Weight::constant(1.0);
    const std::vector<StepFn> fs{StepFn({0.0, 1.0, kInf}, {1.0, 0.0}), StepFn({0.0, 2.0, kInf}, {0.5, 0.0})};
    const auto [combined, separate] = check_p_concavity(fs, 2.0, w, OrliczFn::power(2.0));
    // Equality for phi = u^p, w = 1: both sides are the L_2 norm of the root-sum-square.
    CHECK(combined == doctest::Approx(separate).epsilon(1e-12));
    const auto [c3, s3] = check_p_concavity(fs, 3.0, Weight::power(0.5), OrliczFn::power(2.0));
    CHECK(s3 <= c3 * (1 + 1e-12));
    CHECK_THROWS_AS(check_p_concavity(fs, 1.0, w, OrliczFn::power(2.0)), std::domain_error);
}
