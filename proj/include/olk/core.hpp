#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace olk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Nonnegative extended real. Follows the measure-theoretic convention 0 * inf = 0.
class ExtReal {
public:
    constexpr ExtReal() = default;
    ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
        if (std::isnan(v) || v < 0.0)
            throw std::domain_error("ExtReal must be a nonnegative real or +inf");
    }

    static ExtReal infinity() { return ExtReal(kInf); }

    double value() const { return v_; }
    bool is_inf() const { return std::isinf(v_); }
    bool is_finite() const { return !is_inf(); }

    friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }
    friend ExtReal operator*(ExtReal a, ExtReal b) {
        if (a.v_ == 0.0 || b.v_ == 0.0) return ExtReal(0.0);
        return ExtReal(a.v_ * b.v_);
    }
    ExtReal& operator+=(ExtReal o) { return *this = *this + o; }

    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

private:
    double v_ = 0.0;
};

inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }
inline ExtReal min(ExtReal a, ExtReal b) { return a < b ? a : b; }

/// Finite real sequence with an implicit zero tail.
struct Seq {
    std::vector<double> entries;

    Seq() = default;
    Seq(std::vector<double> e) : entries(std::move(e)) {}  // NOLINT(google-explicit-constructor)
    Seq(std::initializer_list<double> e) : entries(e) {}

    std::size_t size() const { return entries.size(); }
    double operator[](std::size_t i) const { return entries[i]; }
    friend bool operator==(const Seq&, const Seq&) = default;
};

/// Nonnegative piecewise-constant function on (0, a), a <= inf.
///
/// Cell k is (b_k, b_{k+1}] and carries values[k]. Only the last cell may be
/// unbounded. Negative input values are replaced by their absolute value.
class StepFn {
public:
    StepFn(std::vector<double> breakpoints, std::vector<double> values);

    /// Zero function on (0, end).
    static StepFn zero(double end = kInf);
    /// Indicator of (0, t] on (0, end).
    static StepFn indicator(double t, double end = kInf);

    const std::vector<double>& breakpoints() const { return bps_; }
    const std::vector<double>& values() const { return vals_; }
    std::size_t cells() const { return vals_.size(); }
    double domain_end() const { return bps_.back(); }
    double left(std::size_t k) const { return bps_[k]; }
    double right(std::size_t k) const { return bps_[k + 1]; }
    double length(std::size_t k) const { return bps_[k + 1] - bps_[k]; }
    double value(std::size_t k) const { return vals_[k]; }

    /// Value at t in (0, a); cells are closed on the right.
    double operator()(double t) const;
    double sup() const;
    /// Measure of the support.
    double support_measure() const;

    /// Same function with adjacent equal-valued cells merged.
    StepFn simplified() const;
    /// Same function on a finer grid. `grid` must contain every breakpoint.
    StepFn refined(const std::vector<double>& grid) const;
    StepFn scaled(double c) const;

    friend bool operator==(const StepFn&, const StepFn&) = default;

private:
    std::vector<double> bps_;
    std::vector<double> vals_;
};

/// Exact integral; +inf iff some positive value sits on an unbounded cell.
ExtReal integrate(const StepFn& f);

/// Unit-cell embedding: (n-1, n] carries |x(n)|, zero tail to infinity.
StepFn seq_to_step(const Seq& x);
/// Inverse of seq_to_step for unit-cell functions; drops the zero tail cell.
Seq step_to_seq(const StepFn& f);

/// Union of breakpoints of both functions. Throws if the domains differ.
std::vector<double> merged_breakpoints(const StepFn& f, const StepFn& g);

/// Union of two sorted breakpoint lists that share the same endpoints.
std::vector<double> merge_grids(const std::vector<double>& a, const std::vector<double>& b);

/// Cellwise application of `op` on the merged grid of f and g.
template <class BinaryOp>
StepFn pointwise_compose(const StepFn& f, const StepFn& g, BinaryOp op) {
    auto grid = merged_breakpoints(f, g);
    const StepFn fr = f.refined(grid);
    const StepFn gr = g.refined(grid);
    std::vector<double> vals(fr.cells());
    for (std::size_t k = 0; k < vals.size(); ++k) {
        ExtReal r = op(ExtReal(fr.value(k)), ExtReal(gr.value(k)));
        if (r.is_inf()) throw std::domain_error("pointwise_compose: infinite cell value");
        vals[k] = r.value();
    }
    return StepFn(std::move(grid), std::move(vals));
}

StepFn operator+(const StepFn& f, const StepFn& g);
StepFn operator*(const StepFn& f, const StepFn& g);
StepFn max(const StepFn& f, const StepFn& g);

/// Decimal rendering with 17 significant digits; "inf" for infinity.
std::string format_real(double x);

}  // namespace olk
