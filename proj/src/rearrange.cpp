#include "olk/rearrange.hpp"

#include <algorithm>
#include <numeric>

namespace olk {

namespace {

constexpr double kCompareSlack = 1e-13;

struct Cell {
    double value;
    double length;
};

std::vector<Cell> sorted_cells(const StepFn& f) {
    std::vector<Cell> cells;
    cells.reserve(f.cells());
    for (std::size_t k = 0; k < f.cells(); ++k) cells.push_back({f.value(k), f.length(k)});
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });
    return cells;
}

}  // namespace

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t v : images_) {
        if (v >= images_.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return Permutation(std::move(id));
}

Seq Permutation::apply(const Seq& x) const {
    if (x.size() != size()) throw std::invalid_argument("Permutation::apply: size mismatch");
    std::vector<double> y(size());
    for (std::size_t i = 0; i < size(); ++i) y[i] = x[images_[i]];
    return Seq(std::move(y));
}

ExtReal dist(const StepFn& f, double s) {
    if (s < 0.0) throw std::domain_error("dist: level must be nonnegative");
    ExtReal m(0.0);
    for (std::size_t k = 0; k < f.cells(); ++k)
        if (f.value(k) > s) m += ExtReal(f.length(k));
    return m;
}

StepFn decreasing_rearrangement(const StepFn& f) {
    auto cells = sorted_cells(f);
    // A positive value on an unbounded cell fills the whole tail; everything
    // at or below it lives on a null part of the ordering.
    double floor = -1.0;
    for (std::size_t k = 0; k < f.cells(); ++k)
        if (std::isinf(f.length(k)) && f.value(k) > 0.0) floor = f.value(k);

    std::vector<double> b{0.0};
    std::vector<double> v;
    double pos = 0.0;
    for (const auto& c : cells) {
        if (floor >= 0.0 && c.value <= floor) break;
        if (std::isinf(c.length)) break;
        pos += c.length;
        b.push_back(pos);
        v.push_back(c.value);
    }
    if (floor >= 0.0) {
        b.push_back(kInf);
        v.push_back(floor);
    } else if (pos < f.domain_end()) {
        if (v.empty() || v.back() != 0.0) {
            b.push_back(f.domain_end());
            v.push_back(0.0);
        } else {
            b.back() = f.domain_end();
        }
    } else {
        b.back() = f.domain_end();  // absorb rounding in the summed lengths
    }
    return StepFn(std::move(b), std::move(v)).simplified();
}

Seq decreasing_rearrangement(const Seq& x) {
    std::vector<double> e(x.entries);
    for (double& v : e) v = std::abs(v);
    std::sort(e.begin(), e.end(), std::greater<>());
    return Seq(std::move(e));
}

StepFn dilate2(const StepFn& f) {
    const double end = f.domain_end();
    std::vector<double> b{0.0};
    std::vector<double> v;
    for (std::size_t k = 0; k < f.cells(); ++k) {
        const double lo = 2.0 * f.left(k);
        if (lo >= end) break;
        b.push_back(std::min(2.0 * f.right(k), end));
        v.push_back(f.value(k));
    }
    return StepFn(std::move(b), std::move(v));
}

Seq dilate2_seq(const Seq& x) {
    std::vector<double> e;
    e.reserve(2 * x.size());
    for (double v : x.entries) {
        e.push_back(v);
        e.push_back(v);
    }
    return Seq(std::move(e));
}

ExtReal cumulative_rearranged(const StepFn& f, double t) {
    const StepFn r = decreasing_rearrangement(f);
    ExtReal acc(0.0);
    for (std::size_t k = 0; k < r.cells() && r.left(k) < t; ++k)
        acc += ExtReal(r.value(k)) * ExtReal(std::min(t, r.right(k)) - r.left(k));
    return acc;
}

bool submajorizes(const StepFn& g, const StepFn& f) {
    const StepFn gs = decreasing_rearrangement(g);
    const StepFn fs = decreasing_rearrangement(f);
    const auto grid = merged_breakpoints(gs, fs);
    const StepFn gr = gs.refined(grid);
    const StepFn fr = fs.refined(grid);
    // Both cumulatives are concave and piecewise linear on the common grid.
    double cg = 0.0;
    double cf = 0.0;
    for (std::size_t k = 0; k < gr.cells(); ++k) {
        if (std::isinf(gr.length(k))) return gr.value(k) <= fr.value(k);
        cg += gr.value(k) * gr.length(k);
        cf += fr.value(k) * fr.length(k);
        if (cg > cf + kCompareSlack * std::max(cg, cf)) return false;
    }
    return true;
}

bool submajorizes(const Seq& g, const Seq& f) { return submajorizes(seq_to_step(g), seq_to_step(f)); }

PairingSides hardy_littlewood_check(const StepFn& f, const StepFn& g) {
    PairingSides s;
    s.lhs = integrate(f * g);
    s.rhs = integrate(decreasing_rearrangement(f) * decreasing_rearrangement(g));
    return s;
}

ExchangeSides exchange_inequality(double s1, double s2, double t1, double t2, const OrliczFn& phi) {
    if (!(s2 > 0.0) || !(t2 > 0.0)) throw std::invalid_argument("exchange: entries must be positive");
    if (s1 < s2 || t1 < t2) throw std::invalid_argument("exchange: need s1 >= s2 and t1 >= t2");
    ExchangeSides e;
    e.sorted_side = phi(s1 / t1) * t1 + phi(s2 / t2) * t2;
    e.swapped_side = phi(s1 / t2) * t2 + phi(s2 / t1) * t1;
    return e;
}

}  // namespace olk
