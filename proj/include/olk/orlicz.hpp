#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "olk/core.hpp"

namespace olk {

/// Convex, strictly increasing phi: R+ -> R+ with phi(0) = 0.
///
/// Three families are supported:
///  - power:  scale * u^p, p >= 1 (scale = 1/p gives the normalized form u^p/p);
///  - expm1:  e^u - 1;
///  - pwl:    piecewise linear through (0,0) and the given vertices, extended
///            past the last vertex with the last slope.
class OrliczFn {
public:
    enum class Kind { power, expm1, pwl };

    static OrliczFn power(double p, double scale = 1.0);
    static OrliczFn power_normalized(double p) { return power(p, 1.0 / p); }
    static OrliczFn expm1();
    /// Vertices (t_i, y_i), t strictly increasing and positive; slopes must increase.
    static OrliczFn pwl(std::vector<std::pair<double, double>> points);

    Kind kind() const { return kind_; }
    double exponent() const { return p_; }
    double scale() const { return scale_; }
    const std::vector<std::pair<double, double>>& points() const { return pts_; }
    std::string describe() const;

    double operator()(double u) const;
    double inverse(double y) const;
    double right_derivative(double u) const;
    /// Second derivative where it exists; 0 on the flat pieces of pwl.
    double second_derivative(double u) const;
    /// Leftmost u with right_derivative(u) >= y.
    double derivative_inverse(double y) const;
    /// Legendre conjugate sup_s (s t - phi(s)); +inf when it diverges.
    double conjugate(double t) const;
    /// Conjugate as an Orlicz function, available in closed form for power p > 1.
    OrliczFn conjugate_function() const;

    /// Slope bound lim phi(u)/u as u -> inf (inf for superlinear families).
    double asymptotic_slope() const;

private:
    OrliczFn() = default;
    std::size_t pwl_segment(double u) const;

    Kind kind_ = Kind::power;
    double p_ = 1.0;
    double scale_ = 1.0;
    std::vector<std::pair<double, double>> pts_;  // pwl vertices, (0,0) prepended
    std::vector<double> slopes_;                  // slope of segment i, last extends to inf
};

/// sup_s (s t - f(s)) for a convex f with f(0) = 0, by expanding-bracket
/// golden-section search. Returns +inf when the bracket reaches 2^60.
double numeric_conjugate(const std::function<double(double)>& f, double t);

struct Delta2Verdict {
    bool holds = false;
    double constant = 0.0;  ///< observed sup of phi(2u)/phi(u) on the grid
    double witness = 0.0;   ///< first u whose ratio exceeded the ceiling
};

struct GridConfig {
    double lo = 1e-8;
    double hi = 1e8;
    std::size_t points = 161;
    double ceiling = 1e6;
};

Delta2Verdict is_delta2(const OrliczFn& phi, const GridConfig& cfg = {});
bool is_n_function(const OrliczFn& phi, const GridConfig& cfg = {});

/// phi1(u/C) <= phi2(u) <= phi1(C u) on the grid for some C <= max_constant.
/// Returns the smallest such C found by bisection, or nullopt.
std::optional<double> equivalence_constant(const OrliczFn& phi1, const OrliczFn& phi2,
                                           double max_constant = 1e3,
                                           const GridConfig& cfg = {});

/// Midpoint concavity of t -> phi(t^{1/p}) on a log grid. Returns the first
/// violating t, or nullopt when the check passes.
std::optional<double> p_concavity_violation(const OrliczFn& phi, double p,
                                            double tol = 1e-10);

struct IndexEstimate {
    double alpha = 0.0;
    double beta = 0.0;
};

struct IndexGrid {
    double t_lo = 1e-6;
    double t_hi = 1e6;
    std::size_t t_points = 64;
    double log2_lambda_min = -20.0;
    double log2_lambda_max = -1.0;
    std::size_t lambda_points = 64;
};

/// Grid estimate of the lower/upper Matuszewska-Orlicz indices of h on
/// [t_lo, t_hi]: the extremes of log(h(lambda t)/h(t)) / log(lambda) over
/// sampled t and lambda with lambda t still inside the grid range.
IndexEstimate matuszewska_indices(const std::function<double(double)>& h,
                                  const IndexGrid& grid = {});
IndexEstimate matuszewska_indices(const OrliczFn& phi, const IndexGrid& grid = {});

/// Log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace olk
