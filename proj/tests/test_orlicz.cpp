#include <doctest.h>

#include <cmath>

#include "olk/orlicz.hpp"

using namespace olk;

namespace {

// Brute-force Legendre transform on a dense grid over [0, smax].
double grid_conjugate(const OrliczFn& phi, double t, double smax) {
    double best = 0.0;
    const int n = 200000;
    for (int i = 0; i <= n; ++i) {
        const double s = smax * i / n;
        best = std::max(best, s * t - phi(s));
    }
    return best;
}

}  // namespace

TEST_CASE("power family values and inverse") {
    const OrliczFn q = OrliczFn::power(3.0, 2.0);
    CHECK(q(2.0) == doctest::Approx(16.0));
    CHECK(q.inverse(16.0) == doctest::Approx(2.0));
    CHECK(q.right_derivative(2.0) == doctest::Approx(24.0));
    CHECK(OrliczFn::power_normalized(2.0)(3.0) == doctest::Approx(4.5));
    CHECK_THROWS(OrliczFn::power(0.5));
}

TEST_CASE("conjugates match closed forms and a brute-force transform") {
    const OrliczFn half_sq = OrliczFn::power_normalized(2.0);
    CHECK(half_sq.conjugate(3.0) == doctest::Approx(4.5));
    CHECK(half_sq.conjugate(3.0) == doctest::Approx(grid_conjugate(half_sq, 3.0, 10.0)).epsilon(1e-8));

    const OrliczFn cube = OrliczFn::power(3.0);
    for (double t : {0.3, 1.0, 7.0})
        CHECK(cube.conjugate(t) == doctest::Approx(grid_conjugate(cube, t, 5.0)).epsilon(1e-7));

    const OrliczFn e = OrliczFn::expm1();
    for (double t : {1.0, 2.0, 10.0})
        CHECK(e.conjugate(t) == doctest::Approx(t * std::log(t) - t + 1.0).epsilon(1e-10));
    CHECK(e.conjugate(0.5) == 0.0);

    // Linear growth makes the conjugate infinite past the last slope.
    const OrliczFn pw = OrliczFn::pwl({{1.0, 0.5}, {2.0, 2.0}});
    CHECK(std::isinf(pw.conjugate(2.0)));
    CHECK(pw.conjugate(1.0) == doctest::Approx(grid_conjugate(pw, 1.0, 10.0)).epsilon(1e-9));
    CHECK(std::isinf(OrliczFn::power(1.0).conjugate(1.5)));
}

TEST_CASE("closed-form conjugate function of a power") {
    const OrliczFn phi = OrliczFn::power(3.0);
    const OrliczFn star = phi.conjugate_function();
    for (double t : {0.1, 1.0, 4.0}) CHECK(star(t) == doctest::Approx(phi.conjugate(t)).epsilon(1e-12));
}

TEST_CASE("numeric conjugate agrees with closed forms") {
    CHECK(numeric_conjugate([](double s) { return s * s / 2.0; }, 3.0) == doctest::Approx(4.5).epsilon(1e-10));
    CHECK(std::isinf(numeric_conjugate([](double s) { return s; }, 2.0)));
}

TEST_CASE("piecewise-linear family") {
    const OrliczFn pw = OrliczFn::pwl({{1.0, 0.5}, {2.0, 2.0}, {4.0, 8.0}});
    CHECK(pw(0.5) == doctest::Approx(0.25));
    CHECK(pw(1.5) == doctest::Approx(1.25));
    CHECK(pw(5.0) == doctest::Approx(11.0));
    for (double y : {0.1, 1.0, 5.0, 40.0}) CHECK(pw(pw.inverse(y)) == doctest::Approx(y));
    CHECK(pw.derivative_inverse(1.0) == doctest::Approx(1.0));
    CHECK_THROWS(OrliczFn::pwl({{1.0, 2.0}, {2.0, 3.0}}));  // slopes must increase
}

TEST_CASE("delta2 and N-function predicates") {
    const auto sq = is_delta2(OrliczFn::power(2.0));
    CHECK(sq.holds);
    CHECK(sq.constant == doctest::Approx(4.0));
    const auto ex = is_delta2(OrliczFn::expm1());
    CHECK_FALSE(ex.holds);
    CHECK(ex.witness > 0.0);

    CHECK(is_n_function(OrliczFn::power(2.0)));
    CHECK(is_n_function(OrliczFn::power(1.5)));
    CHECK_FALSE(is_n_function(OrliczFn::power(1.0)));
    CHECK_FALSE(is_n_function(OrliczFn::expm1()));
    CHECK_FALSE(is_n_function(OrliczFn::pwl({{1.0, 0.5}, {2.0, 2.0}})));
}

TEST_CASE("equivalence constant of scaled powers") {
    const auto c = equivalence_constant(OrliczFn::power(2.0), OrliczFn::power(2.0, 2.0));
    REQUIRE(c.has_value());
    CHECK(*c == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK_FALSE(equivalence_constant(OrliczFn::power(2.0), OrliczFn::power(3.0)).has_value());
}

TEST_CASE("p-concavity of t -> phi(t^(1/p))") {
    CHECK_FALSE(p_concavity_violation(OrliczFn::power(2.0), 2.0).has_value());
    CHECK_FALSE(p_concavity_violation(OrliczFn::power(2.0), 3.0).has_value());
    CHECK(p_concavity_violation(OrliczFn::power(2.0), 1.0).has_value());
}

TEST_CASE("index estimates recover power exponents") {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const auto est = matuszewska_indices(OrliczFn::power(p));
        CHECK(est.alpha == doctest::Approx(p).epsilon(0.05 / p));
        CHECK(est.beta == doctest::Approx(p).epsilon(0.05 / p));
    }
    // u^2 for u <= 1, u^3 beyond: indices 2 and 3.
    const auto mixed = matuszewska_indices([](double u) { return u <= 1 ? u * u : u * u * u; });
    CHECK(mixed.alpha == doctest::Approx(2.0).epsilon(0.025));
    CHECK(mixed.beta == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("log grid endpoints") {
    const auto g = log_grid(1e-2, 1e2, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == doctest::Approx(1e-2));
    CHECK(g[2] == doctest::Approx(1.0));
    CHECK(g.back() == doctest::Approx(1e2));
}
