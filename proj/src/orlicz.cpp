#include "olk/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace olk {

namespace {

constexpr double kBracketCap = 1152921504606846976.0;  // 2^60

}  // namespace

OrliczFn OrliczFn::power(double p, double scale) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("power Orlicz function needs p >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("power Orlicz function needs scale > 0");
    OrliczFn f;
    f.kind_ = Kind::power;
    f.p_ = p;
    f.scale_ = scale;
    return f;
}

OrliczFn OrliczFn::expm1() {
    OrliczFn f;
    f.kind_ = Kind::expm1;
    return f;
}

OrliczFn OrliczFn::pwl(std::vector<std::pair<double, double>> points) {
    if (points.empty()) throw std::invalid_argument("pwl Orlicz function needs at least one vertex");
    OrliczFn f;
    f.kind_ = Kind::pwl;
    f.pts_.emplace_back(0.0, 0.0);
    for (auto& pt : points) {
        if (pt.first == 0.0 && pt.second == 0.0) continue;
        f.pts_.push_back(pt);
    }
    for (std::size_t i = 0; i + 1 < f.pts_.size(); ++i) {
        const auto [t0, y0] = f.pts_[i];
        const auto [t1, y1] = f.pts_[i + 1];
        if (!(t1 > t0) || !std::isfinite(t1)) throw std::invalid_argument("pwl: abscissae must increase");
        const double s = (y1 - y0) / (t1 - t0);
        if (!(s > 0.0)) throw std::invalid_argument("pwl: function must be strictly increasing");
        if (!f.slopes_.empty() && s < f.slopes_.back())
            throw std::invalid_argument("pwl: slopes must be nondecreasing (convexity)");
        f.slopes_.push_back(s);
    }
    if (f.slopes_.empty()) throw std::invalid_argument("pwl: need a vertex other than the origin");
    return f;
}

std::string OrliczFn::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::power: os << "power(p=" << p_ << ",scale=" << scale_ << ")"; break;
        case Kind::expm1: os << "expm1"; break;
        case Kind::pwl: os << "pwl(" << pts_.size() - 1 << " vertices)"; break;
    }
    return os.str();
}

std::size_t OrliczFn::pwl_segment(double u) const {
    // Segment i spans [t_i, t_{i+1}); the last one extends to infinity.
    auto it = std::upper_bound(pts_.begin(), pts_.end(), u,
                               [](double x, const auto& pt) { return x < pt.first; });
    std::size_t i = static_cast<std::size_t>(it - pts_.begin()) - 1;
    return std::min(i, slopes_.size() - 1);
}

double OrliczFn::operator()(double u) const {
    if (u <= 0.0) return 0.0;
    switch (kind_) {
        case Kind::power: return scale_ * std::pow(u, p_);
        case Kind::expm1: return std::expm1(u);
        case Kind::pwl: {
            const std::size_t i = pwl_segment(u);
            return pts_[i].second + slopes_[i] * (u - pts_[i].first);
        }
    }
    return 0.0;
}

double OrliczFn::inverse(double y) const {
    if (y <= 0.0) return 0.0;
    if (std::isinf(y)) return kInf;
    switch (kind_) {
        case Kind::power: return std::pow(y / scale_, 1.0 / p_);
        case Kind::expm1: return std::log1p(y);
        case Kind::pwl: {
            std::size_t i = 0;
            while (i + 1 < slopes_.size() && pts_[i + 1].second <= y) ++i;
            return pts_[i].first + (y - pts_[i].second) / slopes_[i];
        }
    }
    return 0.0;
}

double OrliczFn::right_derivative(double u) const {
    u = std::max(u, 0.0);
    switch (kind_) {
        case Kind::power:
            if (p_ == 1.0) return scale_;
            return scale_ * p_ * std::pow(u, p_ - 1.0);
        case Kind::expm1: return std::exp(u);
        case Kind::pwl: return slopes_[pwl_segment(u)];
    }
    return 0.0;
}

double OrliczFn::second_derivative(double u) const {
    switch (kind_) {
        case Kind::power:
            if (p_ == 1.0) return 0.0;
            return scale_ * p_ * (p_ - 1.0) * std::pow(u, p_ - 2.0);
        case Kind::expm1: return std::exp(u);
        case Kind::pwl: return 0.0;
    }
    return 0.0;
}

double OrliczFn::derivative_inverse(double y) const {
    if (y <= right_derivative(0.0)) return 0.0;
    switch (kind_) {
        case Kind::power:
            if (p_ == 1.0) return kInf;
            return std::pow(y / (scale_ * p_), 1.0 / (p_ - 1.0));
        case Kind::expm1: return std::log(y);
        case Kind::pwl:
            for (std::size_t i = 0; i < slopes_.size(); ++i)
                if (slopes_[i] >= y) return pts_[i].first;
            return kInf;
    }
    return 0.0;
}

double OrliczFn::asymptotic_slope() const {
    switch (kind_) {
        case Kind::power: return p_ == 1.0 ? scale_ : kInf;
        case Kind::expm1: return kInf;
        case Kind::pwl: return slopes_.back();
    }
    return kInf;
}

double OrliczFn::conjugate(double t) const {
    if (t < 0.0) throw std::domain_error("conjugate: t must be nonnegative");
    if (t == 0.0) return 0.0;
    switch (kind_) {
        case Kind::power: {
            if (p_ == 1.0) return t <= scale_ ? 0.0 : kInf;
            const double q = p_ / (p_ - 1.0);
            return (p_ - 1.0) * scale_ * std::pow(t / (scale_ * p_), q);
        }
        case Kind::expm1:
            return t <= 1.0 ? 0.0 : t * std::log(t) - t + 1.0;
        case Kind::pwl: {
            if (t > slopes_.back()) return kInf;
            double best = 0.0;
            for (const auto& [ti, yi] : pts_) best = std::max(best, t * ti - yi);
            return best;
        }
    }
    return kInf;
}

OrliczFn OrliczFn::conjugate_function() const {
    if (kind_ != Kind::power || p_ == 1.0)
        throw std::invalid_argument("conjugate_function: closed form only for power functions with p > 1");
    const double q = p_ / (p_ - 1.0);
    return power(q, (p_ - 1.0) * scale_ * std::pow(scale_ * p_, -q));
}

double numeric_conjugate(const std::function<double(double)>& f, double t) {
    if (t < 0.0) throw std::domain_error("numeric_conjugate: t must be nonnegative");
    if (t == 0.0) return 0.0;
    auto g = [&](double s) { return s * t - f(s); };
    double hi = 1.0;
    while (g(2.0 * hi) > g(hi)) {
        hi *= 2.0;
        if (hi >= kBracketCap) return kInf;
    }
    double a = 0.0;
    double b = 2.0 * hi;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a);
    double x2 = a + r * (b - a);
    double g1 = g(x1);
    double g2 = g(x2);
    double best = std::max({0.0, g1, g2, g(hi)});
    for (int it = 0; it < 400 && (b - a) > 1e-16 * std::max(1.0, b); ++it) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + r * (b - a);
            g2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - r * (b - a);
            g1 = g(x1);
        }
        best = std::max({best, g1, g2});
    }
    return best;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

Delta2Verdict is_delta2(const OrliczFn& phi, const GridConfig& cfg) {
    Delta2Verdict v;
    v.holds = true;
    for (double u : log_grid(cfg.lo, cfg.hi, cfg.points)) {
        const double base = phi(u);
        if (!(base > 0.0)) continue;
        const double ratio = phi(2.0 * u) / base;
        if (!std::isfinite(ratio) || ratio > cfg.ceiling) {
            v.holds = false;
            v.witness = u;
            v.constant = ratio;
            return v;
        }
        v.constant = std::max(v.constant, ratio);
    }
    return v;
}

bool is_n_function(const OrliczFn& phi, const GridConfig& cfg) {
    auto ratio = [&](double t) { return phi(t) / t; };
    const double at_one = ratio(1.0);
    double prev = 0.0;
    for (double t : log_grid(cfg.lo, cfg.hi, cfg.points)) {
        const double r = ratio(t);
        if (std::isinf(r)) break;
        if (r < prev * (1.0 - 1e-12)) return false;
        prev = r;
    }
    const double small = ratio(cfg.lo) / at_one;
    const double large = ratio(cfg.hi) / at_one;
    return small <= 1e-2 && large >= 1e2;
}

std::optional<double> equivalence_constant(const OrliczFn& phi1, const OrliczFn& phi2,
                                           double max_constant, const GridConfig& cfg) {
    const auto grid = log_grid(cfg.lo, cfg.hi, cfg.points);
    auto holds = [&](double c) {
        for (double u : grid) {
            const double mid = phi2(u);
            const double lo = phi1(u / c);
            const double hi = phi1(c * u);
            if (!std::isfinite(mid)) continue;
            if (lo > mid * (1.0 + 1e-12) || hi < mid * (1.0 - 1e-12)) return false;
        }
        return true;
    };
    if (!holds(max_constant)) return std::nullopt;
    if (holds(1.0)) return 1.0;
    double lo = 0.0;
    double hi = std::log(max_constant);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (holds(std::exp(mid)) ? hi : lo) = mid;
    }
    return std::exp(hi);
}

std::optional<double> p_concavity_violation(const OrliczFn& phi, double p, double tol) {
    if (!(p > 0.0)) throw std::invalid_argument("p-concavity needs p > 0");
    auto g = [&](double t) { return phi(std::pow(t, 1.0 / p)); };
    const auto grid = log_grid(1e-6, 1e6, 121);
    for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
        const double a = grid[i];
        const double b = grid[i + 2];
        const double chord = 0.5 * (g(a) + g(b));
        if (g(0.5 * (a + b)) < chord - tol * std::max(1.0, std::abs(chord))) return grid[i + 1];
    }
    return std::nullopt;
}

IndexEstimate matuszewska_indices(const std::function<double(double)>& h, const IndexGrid& grid) {
    IndexEstimate est{kInf, -kInf};
    const auto ts = log_grid(grid.t_lo, grid.t_hi, grid.t_points);
    for (std::size_t j = 0; j < grid.lambda_points; ++j) {
        const double frac = grid.lambda_points == 1
                                ? 0.0
                                : static_cast<double>(j) / static_cast<double>(grid.lambda_points - 1);
        const double log2_lambda =
            grid.log2_lambda_min + (grid.log2_lambda_max - grid.log2_lambda_min) * frac;
        const double lambda = std::exp2(log2_lambda);
        for (double t : ts) {
            const double s = lambda * t;
            if (s < grid.t_lo) continue;
            const double num = h(s);
            const double den = h(t);
            if (!(num > 0.0) || !(den > 0.0) || !std::isfinite(num) || !std::isfinite(den)) continue;
            const double q = std::log(num / den) / std::log(lambda);
            est.alpha = std::min(est.alpha, q);
            est.beta = std::max(est.beta, q);
        }
    }
    return est;
}

IndexEstimate matuszewska_indices(const OrliczFn& phi, const IndexGrid& grid) {
    return matuszewska_indices([&phi](double u) { return phi(u); }, grid);
}

}  // namespace olk
