#include "olk/modular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "olk/rearrange.hpp"

namespace olk {

namespace {

constexpr double kGaugeSpan = 1152921504606846976.0;  // 2^60

}  // namespace

ExtReal modular_Iv(const StepFn& f, const StepFn& v, const OrliczFn& phi) {
    const auto grid = merged_breakpoints(f, v);
    const StepFn fr = f.refined(grid);
    const StepFn vr = v.refined(grid);
    ExtReal total(0.0);
    for (std::size_t k = 0; k < fr.cells(); ++k) {
        const double c = fr.value(k);
        if (c == 0.0) continue;
        const double wv = vr.value(k);
        if (wv == 0.0 || std::isinf(fr.length(k))) return ExtReal::infinity();
        total += ExtReal(phi(c / wv) * wv * fr.length(k));
    }
    return total;
}

ExtReal modular_M(const StepFn& f, const Weight& w, const OrliczFn& phi) {
    const StepFn fs = decreasing_rearrangement(f);
    ExtReal total(0.0);
    for (std::size_t k = 0; k < fs.cells(); ++k) {
        if (fs.value(k) == 0.0) continue;
        total += w.modular_integral(phi, fs.value(k), fs.left(k), fs.right(k));
        if (total.is_inf()) break;
    }
    return total;
}

ExtReal modular_m(const Seq& x, const Seq& w, const OrliczFn& phi) {
    return modular_M(seq_to_step(x), Weight::from_sequence(w), phi);
}

double minkowski_gauge(const std::function<ExtReal(double)>& modular_at, double guess, double rel_tol) {
    if (!(guess > 0.0) || !std::isfinite(guess)) throw std::invalid_argument("minkowski_gauge: guess must be positive");
    auto inside = [&](double eps) { return modular_at(eps) <= ExtReal(1.0); };
    double hi = guess;
    while (!inside(hi)) {
        hi *= 2.0;
        if (hi > guess * kGaugeSpan) return kInf;
    }
    double lo = hi;
    do {
        lo *= 0.5;
        if (lo < guess / kGaugeSpan) return lo;
    } while (inside(lo));
    // Bisect in log scale; hi always satisfies the constraint.
    for (int it = 0; it < 200 && hi - lo > rel_tol * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi)) break;
        (inside(mid) ? hi : lo) = mid;
    }
    return hi;
}

double luxemburg_norm(const StepFn& f, const Weight& w, const OrliczFn& phi) {
    const double top = f.sup();
    if (top == 0.0) return 0.0;
    return minkowski_gauge([&](double eps) { return modular_M(f.scaled(1.0 / eps), w, phi); }, top);
}

double luxemburg_norm(const Seq& x, const Seq& w, const OrliczFn& phi) {
    return luxemburg_norm(seq_to_step(x), Weight::from_sequence(w), phi);
}

std::pair<ExtReal, ExtReal> check_superadditive(const StepFn& f, const StepFn& g, const Weight& w,
                                                const OrliczFn& phi) {
    const auto grid = merged_breakpoints(f, g);
    const StepFn fr = f.refined(grid);
    const StepFn gr = g.refined(grid);
    for (std::size_t k = 0; k < fr.cells(); ++k)
        if (fr.value(k) > 0.0 && gr.value(k) > 0.0)
            throw std::invalid_argument("check_superadditive: supports overlap on (" + format_real(fr.left(k)) +
                                        ", " + format_real(fr.right(k)) + "]");
    return {modular_M(f + g, w, phi), modular_M(f, w, phi) + modular_M(g, w, phi)};
}

std::pair<double, double> check_p_concavity(const std::vector<StepFn>& fs, double p, const Weight& w,
                                            const OrliczFn& phi) {
    if (fs.empty()) throw std::invalid_argument("check_p_concavity: empty family");
    if (auto bad = p_concavity_violation(phi, p)) {
        std::ostringstream os;
        os << "check_p_concavity: " << phi.describe() << " is not " << p << "-concave near t = " << format_real(*bad);
        throw std::domain_error(os.str());
    }
    StepFn acc = StepFn::zero(fs.front().domain_end());
    double rhs = 0.0;
    for (const auto& f : fs) {
        acc = pointwise_compose(acc, f, [p](ExtReal a, ExtReal b) { return ExtReal(a.value() + std::pow(b.value(), p)); });
        rhs += std::pow(luxemburg_norm(f, w, phi), p);
    }
    const StepFn combined = pointwise_compose(acc, acc, [p](ExtReal a, ExtReal) { return ExtReal(std::pow(a.value(), 1.0 / p)); });
    return {luxemburg_norm(combined, w, phi), std::pow(rhs, 1.0 / p)};
}

}  // namespace olk
