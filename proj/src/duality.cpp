#include "olk/duality.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "olk/modular.hpp"
#include "olk/rearrange.hpp"

namespace olk {

namespace {

struct WeightedCells {
    std::vector<double> c;     // values of f*
    std::vector<double> mass;  // W over each cell
    StepFn fs = StepFn::zero();
    bool infinite = false;     // positive value on a cell of infinite w-mass
};

WeightedCells weighted_cells(const StepFn& f, const Weight& w) {
    WeightedCells wc;
    wc.fs = decreasing_rearrangement(f);
    for (std::size_t k = 0; k < wc.fs.cells(); ++k) {
        if (wc.fs.value(k) == 0.0) continue;
        const double m = w.mass(wc.fs.left(k), wc.fs.right(k));
        if (std::isinf(m)) wc.infinite = true;
        wc.c.push_back(wc.fs.value(k));
        wc.mass.push_back(m);
    }
    return wc;
}

double golden_min(const std::function<double(double)>& h, double a, double b, double tol) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a);
    double x2 = a + r * (b - a);
    double h1 = h(x1);
    double h2 = h(x2);
    for (int it = 0; it < 300 && b - a > tol * std::max(std::abs(b), 1e-300); ++it) {
        if (h1 <= h2) {
            b = x2;
            x2 = x1;
            h2 = h1;
            x1 = b - r * (b - a);
            h1 = h(x1);
        } else {
            a = x1;
            x1 = x2;
            h1 = h2;
            x2 = a + r * (b - a);
            h2 = h(x2);
        }
    }
    return h1 <= h2 ? x1 : x2;
}

// int_0^1 phi(c s) / s ds
double log_average(const OrliczFn& phi, double c) {
    if (phi.kind() == OrliczFn::Kind::power) return phi(c) / phi.exponent();
    auto g = [&](double s) { return phi(c * s) / s; };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-14);
}

}  // namespace

DualNormResult orlicz_norm_amemiya(const StepFn& f, const Weight& w, const std::function<double(double)>& phi_star,
                                   double tol) {
    DualNormResult res;
    const auto wc = weighted_cells(f, w);
    if (wc.c.empty()) return res;
    if (wc.infinite) {
        res.value = kInf;
        return res;
    }
    auto objective = [&](double k) {
        double s = 1.0;
        for (std::size_t j = 0; j < wc.c.size(); ++j) {
            if (wc.mass[j] == 0.0) continue;
            s += phi_star(k * wc.c[j]) * wc.mass[j];
        }
        return s / k;
    };
    double k = 1.0 / wc.c.front();
    int guard = 0;
    while (!std::isfinite(objective(k))) {
        k *= 0.5;
        if (++guard > 200) {
            res.value = kInf;
            return res;
        }
    }
    // Expand a bracket [lo, hi] around the minimizer of the unimodal objective.
    double lo = k;
    double hi = k;
    while (objective(2.0 * hi) < objective(hi) && hi < 1e300) hi *= 2.0;
    while (objective(0.5 * lo) < objective(lo) && lo > 1e-300) lo *= 0.5;
    lo *= 0.5;
    hi *= 2.0;
    const double kstar = golden_min(objective, lo, hi, tol);
    res.amemiya_k = kstar;
    res.value = objective(kstar);
    return res;
}

DualNormResult orlicz_norm_amemiya(const StepFn& f, const Weight& w, const OrliczFn& phi_star, double tol) {
    if (!is_n_function(phi_star)) throw std::invalid_argument("orlicz_norm_amemiya: conjugate must be an N-function");
    return orlicz_norm_amemiya(f, w, [&](double t) { return phi_star(t); }, tol);
}

HolderSides holder_pairing(const StepFn& f, const StepFn& g, const Weight& w, const OrliczFn& phi, double tol) {
    if (!is_n_function(phi)) throw std::invalid_argument("holder_pairing: phi must be an N-function");
    HolderSides h;
    h.pairing = integrate(f * g).value();
    const double gn = luxemburg_norm(g, w, phi);
    if (gn == 0.0) return h;
    const double fn = orlicz_norm_amemiya(f, w, [&](double t) { return phi.conjugate(t); }, tol).value;
    h.bound = fn * gn;
    return h;
}

DualNormResult norming_supremum(const StepFn& f, const Weight& w, const OrliczFn& phi, double tol) {
    if (!is_n_function(phi)) throw std::invalid_argument("norming_supremum: phi must be an N-function");
    DualNormResult res;
    const auto wc = weighted_cells(f, w);
    res.profile = StepFn::zero(f.domain_end());
    if (wc.c.empty()) return res;
    if (wc.infinite) throw std::invalid_argument("norming_supremum: f* has infinite weighted mass");

    const std::size_t n = wc.c.size();
    std::vector<double> h(n);
    auto fill = [&](double lambda) {
        for (std::size_t j = 0; j < n; ++j) h[j] = phi.derivative_inverse(wc.c[j] / lambda);
    };
    auto modular = [&](double scale) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (wc.mass[j] > 0.0) s += phi(scale * h[j]) * wc.mass[j];
        return s;
    };
    auto modular_at = [&](double lambda) {
        fill(lambda);
        return modular(1.0);
    };

    // modular_at is nonincreasing in lambda; bracket and bisect in log scale.
    double lo = 1.0;
    double hi = 1.0;
    while (modular_at(hi) > 1.0 && hi < 1e300) hi *= 2.0;
    while (modular_at(lo) <= 1.0 && lo > 1e-300) lo *= 0.5;
    for (int it = 0; it < 200 && hi - lo > tol * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi)) break;
        (modular_at(mid) > 1.0 ? lo : hi) = mid;
    }
    res.lambda = hi;
    fill(hi);
    double m = modular(1.0);
    double scale = 1.0;
    if (m < 1.0 - 1e-9) {
        // Flat of phi': the multiplier jumps over the unit level. Stretch h instead.
        res.stalled = true;
        res.delta = 0.10;
        double a = 1.0;
        double b = 2.0;
        while (modular(b) <= 1.0 && b < 1e300) b *= 2.0;
        for (int it = 0; it < 200 && b - a > tol * b; ++it) {
            const double mid = 0.5 * (a + b);
            (modular(mid) <= 1.0 ? a : b) = mid;
        }
        scale = a;
        m = modular(scale);
    }
    for (double& x : h) x *= scale;
    res.modular = m;

    double pairing = 0.0;
    for (std::size_t j = 0; j < n; ++j) pairing += wc.c[j] * h[j] * wc.mass[j];
    res.value = pairing;

    std::vector<double> b{0.0};
    std::vector<double> vals;
    for (std::size_t k = 0, j = 0; k < wc.fs.cells(); ++k) {
        b.push_back(wc.fs.right(k));
        vals.push_back(wc.fs.value(k) > 0.0 ? h[j++] : 0.0);
    }
    res.profile = StepFn(b, vals);
    if (w.is_step()) res.attainer = res.profile * w.as_step();
    return res;
}

TrivialDualProbe trivial_dual_probe(double b, const Weight& w, const OrliczFn& phi, double ceiling) {
    if (!(b > 0.0)) throw std::invalid_argument("trivial_dual_probe: b must be positive");
    if (!w.cumulative_infinite() || w.kind() != Weight::Kind::power || w.gamma() != 1.0)
        throw std::invalid_argument("trivial_dual_probe: needs the weight 1/t");
    if (!is_n_function(phi)) throw std::invalid_argument("trivial_dual_probe: phi must be an N-function");
    const double coef = w.pieces().front().coef;
    TrivialDualProbe probe;
    // With w = coef/t and L = ln(b/u): int_0^b (w ^ w(u)) = coef (1 + L), and
    // M(c f_u) = coef (int_0^1 phi(c s)/s ds + phi(c) L).
    for (int j = 0; j <= 64; ++j) {
        TrivialDualStep st;
        st.log_ratio = std::ldexp(1.0, j);
        const double mass = coef * (1.0 + st.log_ratio);
        st.c = phi.inverse(1.0 / mass);
        st.pairing = st.c * mass;
        st.modular = coef * (log_average(phi, st.c) + phi(st.c) * st.log_ratio);
        if (st.modular > 1.0 + 1e-12) probe.modular_bounded = false;
        probe.steps.push_back(st);
        if (st.pairing > ceiling) {
            probe.diverged = true;
            break;
        }
    }
    return probe;
}

}  // namespace olk
