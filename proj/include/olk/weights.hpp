#pragma once

#include <string>
#include <vector>

#include "olk/core.hpp"
#include "olk/orlicz.hpp"

namespace olk {

/// w(t) = coef * t^(-gamma) on (a, b].
struct WeightPiece {
    double a = 0.0;
    double b = 0.0;
    double coef = 0.0;
    double gamma = 0.0;

    double at(double t) const;
    /// Integral of w over (x, y] with a <= x <= y <= b.
    double mass(double x, double y) const;
};

/// Decreasing weight on (0, a) with exact cumulative W(t) = int_0^t w.
///
/// Every weight is a finite chain of power-law pieces. Catalog weights that
/// oscillate down to 0 are truncated at `truncation()`: the mass below is kept
/// exactly, but point evaluation below the truncation throws.
class Weight {
public:
    enum class Kind { constant, power, step, example314, example415, envelope };

    static Weight constant(double c, double end = kInf);
    /// t^(-gamma) on (0, inf); gamma >= 1 yields W identically infinite.
    static Weight power(double gamma, double coef = 1.0);
    /// Nonincreasing step function; zero cells are allowed.
    static Weight step(const StepFn& profile);
    /// Unit-cell step weight with a zero tail.
    static Weight from_sequence(const Seq& w);
    /// 2^(k^2) on (4^-(k+1)^2, 4^-k^2], k = 0..kmax, on (0, 1].
    static Weight example314(int kmax = 8);
    /// max(2^-(k+1)^2 / t, 2^(k^2)) on (4^-(k+1)^2, 4^-k^2], k = 0..kmax, on (0, 1).
    static Weight example415(int kmax = 8);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<WeightPiece>& pieces() const { return pieces_; }
    double domain_end() const { return end_; }
    double truncation() const { return t_lo_; }
    bool cumulative_infinite() const { return w_infinite_; }
    int kmax() const { return kmax_; }
    double constant_value() const { return pieces_.front().coef; }
    double gamma() const { return pieces_.front().gamma; }
    bool is_step() const;
    StepFn as_step() const;

    /// Value at t (left-continuous). Zero beyond the domain.
    double operator()(double t) const;
    /// Limit from the right at t.
    double right_limit(double t) const;
    /// W(t); W(t) = W(a) for t beyond the domain.
    double cumulative(double t) const;
    /// W(y) - W(x).
    double mass(double x, double y) const;

    /// int_x^y phi(c / w) w with the 0/0 convention; x < y.
    ExtReal modular_integral(const OrliczFn& phi, double c, double x, double y) const;

    /// Critical points along which the predicates look for unbounded growth.
    const std::vector<std::vector<double>>& probe_sequences() const { return probes_; }
    /// Sample points for predicate sups: log grid plus all piece boundaries.
    std::vector<double> sample_points(std::size_t n = 161) const;

private:
    Weight() = default;
    void finalize();
    std::size_t piece_index(double t) const;

    Kind kind_ = Kind::constant;
    std::string name_;
    std::vector<WeightPiece> pieces_;
    std::vector<double> cum_;  // W at the left end of each piece
    double end_ = kInf;
    double t_lo_ = 0.0;
    double mass_below_ = 0.0;
    bool w_infinite_ = false;
    int kmax_ = 0;
    std::vector<std::vector<double>> probes_;

    friend Weight w1_envelope(const Weight& w, int refinement);
};

struct PredicateVerdict {
    bool holds = false;
    double constant = 0.0;  ///< observed sup on the grid
    double witness = 0.0;   ///< point of the largest observed ratio
    bool growth = false;    ///< unbounded growth detected along a probe sequence
};

struct PredicateConfig {
    double ceiling = 1e6;
    std::size_t points = 161;
    double c_lo = 1e-6;
    double c_hi = 1e6;
    std::size_t c_points = 25;
};

/// True when the tail of r increases with increments that do not shrink,
/// i.e. the sequence grows at least linearly.
bool unbounded_trend(const std::vector<double>& r);

/// sup W(u) / (u w(u)).
PredicateVerdict is_regular(const Weight& w, const PredicateConfig& cfg = {});
/// sup w(t) / w(2t).
PredicateVerdict inv_w_delta2(const Weight& w, const PredicateConfig& cfg = {});
/// sup over (c, t) of phi(c/w(2t)) w(2t) / (phi(c/w(t)) w(t)).
PredicateVerdict is_phi_controlled(const Weight& w, const OrliczFn& phi,
                                   const PredicateConfig& cfg = {});

/// W(t)/t evaluated exactly.
double w1_value(const Weight& w, double t);
/// Step overestimate of t -> W(t)/t (exact for constant and power weights).
/// Each piece is split into `refinement` geometric subcells carrying the
/// value at their left end.
Weight w1_envelope(const Weight& w, int refinement = 16);

}  // namespace olk
