#include "olk/core.hpp"

#include <algorithm>
#include <cstdio>

namespace olk {

StepFn::StepFn(std::vector<double> breakpoints, std::vector<double> values)
    : bps_(std::move(breakpoints)), vals_(std::move(values)) {
    if (vals_.empty()) throw std::invalid_argument("StepFn needs at least one cell");
    if (bps_.size() != vals_.size() + 1)
        throw std::invalid_argument("StepFn: breakpoints must number cells + 1");
    if (bps_.front() != 0.0) throw std::invalid_argument("StepFn: first breakpoint must be 0");
    for (std::size_t k = 0; k + 1 < bps_.size(); ++k) {
        if (std::isnan(bps_[k + 1]) || !(bps_[k + 1] > bps_[k]))
            throw std::invalid_argument("StepFn: breakpoints must be strictly increasing");
        if (std::isinf(bps_[k]))
            throw std::invalid_argument("StepFn: only the last cell may be unbounded");
    }
    for (double& v : vals_) {
        if (!std::isfinite(v)) throw std::invalid_argument("StepFn: values must be finite");
        v = std::abs(v);
    }
}

StepFn StepFn::zero(double end) { return StepFn({0.0, end}, {0.0}); }

StepFn StepFn::indicator(double t, double end) {
    if (!(t > 0.0) || t > end) throw std::invalid_argument("indicator: need 0 < t <= end");
    if (t == end) return StepFn({0.0, end}, {1.0});
    return StepFn({0.0, t, end}, {1.0, 0.0});
}

double StepFn::operator()(double t) const {
    if (!(t > 0.0) || t > domain_end()) throw std::out_of_range("StepFn: argument outside (0, a)");
    auto it = std::lower_bound(bps_.begin() + 1, bps_.end(), t);
    return vals_[static_cast<std::size_t>(it - bps_.begin()) - 1];
}

double StepFn::sup() const { return *std::max_element(vals_.begin(), vals_.end()); }

double StepFn::support_measure() const {
    double m = 0.0;
    for (std::size_t k = 0; k < cells(); ++k)
        if (vals_[k] > 0.0) m += length(k);
    return m;
}

StepFn StepFn::simplified() const {
    std::vector<double> b{0.0};
    std::vector<double> v;
    for (std::size_t k = 0; k < cells(); ++k) {
        if (!v.empty() && v.back() == vals_[k]) {
            b.back() = bps_[k + 1];
        } else {
            v.push_back(vals_[k]);
            b.push_back(bps_[k + 1]);
        }
    }
    return StepFn(std::move(b), std::move(v));
}

StepFn StepFn::refined(const std::vector<double>& grid) const {
    if (grid.front() != 0.0 || grid.back() != domain_end())
        throw std::invalid_argument("refined: grid must span the same domain");
    std::vector<double> v;
    v.reserve(grid.size() - 1);
    std::size_t k = 0;
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
        while (bps_[k + 1] < grid[j + 1]) ++k;
        v.push_back(vals_[k]);
    }
    return StepFn(grid, std::move(v));
}

StepFn StepFn::scaled(double c) const {
    std::vector<double> v = vals_;
    for (double& x : v) x *= std::abs(c);
    return StepFn(bps_, std::move(v));
}

ExtReal integrate(const StepFn& f) {
    ExtReal total(0.0);
    for (std::size_t k = 0; k < f.cells(); ++k) total += ExtReal(f.value(k)) * ExtReal(f.length(k));
    return total;
}

StepFn seq_to_step(const Seq& x) {
    std::vector<double> b{0.0};
    std::vector<double> v;
    for (std::size_t n = 0; n < x.size(); ++n) {
        b.push_back(static_cast<double>(n + 1));
        v.push_back(std::abs(x[n]));
    }
    b.push_back(kInf);
    v.push_back(0.0);
    return StepFn(std::move(b), std::move(v));
}

Seq step_to_seq(const StepFn& f) {
    std::vector<double> e;
    for (std::size_t k = 0; k < f.cells(); ++k) {
        if (std::isinf(f.right(k))) {
            if (f.value(k) != 0.0) throw std::invalid_argument("step_to_seq: nonzero tail");
            break;
        }
        if (f.length(k) != 1.0 || f.left(k) != static_cast<double>(k))
            throw std::invalid_argument("step_to_seq: not a unit-cell function");
        e.push_back(f.value(k));
    }
    return Seq(std::move(e));
}

std::vector<double> merge_grids(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> merged_breakpoints(const StepFn& f, const StepFn& g) {
    if (f.domain_end() != g.domain_end())
        throw std::invalid_argument("step functions live on different intervals");
    return merge_grids(f.breakpoints(), g.breakpoints());
}

StepFn operator+(const StepFn& f, const StepFn& g) {
    return pointwise_compose(f, g, [](ExtReal a, ExtReal b) { return a + b; });
}

StepFn operator*(const StepFn& f, const StepFn& g) {
    return pointwise_compose(f, g, [](ExtReal a, ExtReal b) { return a * b; });
}

StepFn max(const StepFn& f, const StepFn& g) {
    return pointwise_compose(f, g, [](ExtReal a, ExtReal b) { return olk::max(a, b); });
}

std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace olk
