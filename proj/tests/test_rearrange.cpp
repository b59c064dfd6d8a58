#include <doctest.h>

#include <algorithm>
#include <random>

#include "olk/rearrange.hpp"

using namespace olk;

namespace {

StepFn random_step(std::mt19937_64& rng, int cells, bool tail) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> b{0.0}, v;
    for (int k = 0; k < cells; ++k) {
        b.push_back(b.back() + 0.05 + u(rng));
        v.push_back(u(rng) < 0.2 ? 0.0 : 4 * u(rng));
    }
    if (tail) b.push_back(kInf), v.push_back(0.0);
    return StepFn(b, v);
}

}  // namespace

TEST_CASE("permutations") {
    const Permutation s({2, 0, 1});
    CHECK(s.apply({10.0, 20.0, 30.0}) == Seq{30.0, 10.0, 20.0});
    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 3}), std::invalid_argument);
    CHECK(Permutation::identity(3).images() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("sequence rearrangement sorts absolute values") {
    CHECK(decreasing_rearrangement(Seq{1.0, -3.0, 2.0, 0.0}) == Seq{3.0, 2.0, 1.0, 0.0});
    CHECK(dilate2_seq({3.0, 1.0}) == Seq{3.0, 3.0, 1.0, 1.0});
}

TEST_CASE("rearrangement is nonincreasing and equimeasurable") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        const StepFn f = random_step(rng, 1 + rep % 7, rep % 2 == 0);
        const StepFn fs = decreasing_rearrangement(f);
        CHECK(fs.domain_end() == f.domain_end());
        for (std::size_t k = 1; k < fs.cells(); ++k) CHECK(fs.value(k) < fs.value(k - 1));
        for (double s : f.values()) {
            CHECK(dist(fs, s).value() == doctest::Approx(dist(f, s).value()).epsilon(1e-14));
            CHECK(dist(fs, s * 0.999).value() == doctest::Approx(dist(f, s * 0.999).value()).epsilon(1e-14));
        }
        CHECK(integrate(fs).value() == doctest::Approx(integrate(f).value()).epsilon(1e-14));
    }
}

TEST_CASE("distribution function by hand") {
    const StepFn f({0.0, 1.0, 3.0, 4.0}, {2.0, 5.0, 1.0});
    CHECK(dist(f, 0.5).value() == 4.0);
    CHECK(dist(f, 1.0).value() == 3.0);
    CHECK(dist(f, 2.0).value() == 2.0);
    CHECK(dist(f, 5.0).value() == 0.0);
    const StepFn g({0.0, 1.0, kInf}, {1.0, 0.5});
    CHECK(dist(g, 0.2).is_inf());
    // A positive unbounded tail is the floor of f*.
    const StepFn gs = decreasing_rearrangement(g);
    CHECK(gs.values() == std::vector<double>{1.0, 0.5});
}

TEST_CASE("dilation doubles the distribution") {
    const StepFn f({0.0, 1.0, 3.0, kInf}, {2.0, 5.0, 0.0});
    const StepFn d = dilate2(f);
    CHECK(d(1.5) == 2.0);
    CHECK(d(5.0) == 5.0);
    CHECK(dist(d, 1.0).value() == 2 * dist(f, 1.0).value());
}

TEST_CASE("cumulative rearranged and submajorization against prefix sums") {
    const StepFn f({0.0, 1.0, 3.0, 4.0}, {2.0, 5.0, 1.0});
    CHECK(cumulative_rearranged(f, 1.0).value() == doctest::Approx(5.0));
    CHECK(cumulative_rearranged(f, 2.5).value() == doctest::Approx(10.0 + 1.0));
    CHECK(cumulative_rearranged(f, 4.0).value() == doctest::Approx(13.0));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        Seq x, y;
        for (int i = 0; i < 5; ++i) x.entries.push_back(u(rng)), y.entries.push_back(u(rng));
        auto xs = decreasing_rearrangement(x).entries, ys = decreasing_rearrangement(y).entries;
        bool expect = true;
        double px = 0, py = 0;
        for (int i = 0; i < 5; ++i) {
            px += xs[i], py += ys[i];
            if (py > px) expect = false;
        }
        CHECK(submajorizes(y, x) == expect);
        CHECK(submajorizes(seq_to_step(y), seq_to_step(x)) == expect);
    }
}

TEST_CASE("Hardy-Littlewood pairing") {
    const StepFn f = seq_to_step({1.0, 2.0});
    const StepFn g = seq_to_step({2.0, 1.0});
    const auto s = hardy_littlewood_check(f, g);
    CHECK(s.lhs.value() == doctest::Approx(4.0));
    CHECK(s.rhs.value() == doctest::Approx(5.0));
}

TEST_CASE("exchange inequality") {
    const auto e = exchange_inequality(2.0, 1.0, 2.0, 1.0, OrliczFn::power(2.0));
    CHECK(e.sorted_side == doctest::Approx(3.0));
    CHECK(e.swapped_side == doctest::Approx(4.5));
    CHECK_THROWS_AS(exchange_inequality(1.0, 2.0, 2.0, 1.0, OrliczFn::power(2.0)), std::invalid_argument);
    CHECK_THROWS_AS(exchange_inequality(2.0, 1.0, 2.0, 0.0, OrliczFn::power(2.0)), std::invalid_argument);
}
