#include "olk/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace olk {

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

// int_x^y t^(-gamma) dt
double power_mass(double gamma, double x, double y) {
    if (y <= x) return 0.0;
    if (gamma == 0.0) return y - x;
    if (gamma == 1.0) return std::log(y / x);
    return (std::pow(y, 1.0 - gamma) - std::pow(x, 1.0 - gamma)) / (1.0 - gamma);
}

// phi(c/x) x with the convention at x = 0.
double phi_weighted(const OrliczFn& phi, double c, double x) {
    if (c == 0.0) return 0.0;
    if (x == 0.0) return kInf;
    return phi(c / x) * x;
}

double piece_modular(const OrliczFn& phi, double c, const WeightPiece& p, double x, double y) {
    if (c == 0.0 || y <= x) return 0.0;
    if (p.coef == 0.0) return kInf;
    // phi(c/w)w = c * phi(u)/u with u = c/w nondecreasing in t, so an unbounded
    // cell always diverges.
    if (std::isinf(y)) return kInf;
    if (p.gamma == 0.0) return phi(c / p.coef) * p.coef * (y - x);

    switch (phi.kind()) {
        case OrliczFn::Kind::power: {
            const double e = p.gamma * (phi.exponent() - 1.0);
            return phi.scale() * std::pow(c, phi.exponent()) * std::pow(p.coef, 1.0 - phi.exponent()) *
                   (std::pow(y, e + 1.0) - std::pow(x, e + 1.0)) / (e + 1.0);
        }
        case OrliczFn::Kind::pwl: {
            // u(t) = c t^gamma / coef crosses the vertices at t_i = (v_i coef / c)^(1/gamma);
            // on each linear segment phi(u) = m u + d the integrand is m c + d coef t^(-gamma).
            const auto& pts = phi.points();
            double total = 0.0;
            double lo = x;
            for (std::size_t i = 0; i < pts.size() && lo < y; ++i) {
                double hi = y;
                if (i + 1 < pts.size())
                    hi = std::min(y, std::pow(pts[i + 1].first * p.coef / c, 1.0 / p.gamma));
                if (hi <= lo) continue;
                const double mid = std::pow(c / p.coef, 1.0) * std::pow(0.5 * (lo + hi), p.gamma);
                const double m = phi.right_derivative(mid);
                const double d = phi(mid) - m * mid;
                total += m * c * (hi - lo) + d * p.coef * power_mass(p.gamma, lo, hi);
                lo = hi;
            }
            return total;
        }
        case OrliczFn::Kind::expm1: {
            auto f = [&](double t) { return phi_weighted(phi, c, p.at(t)); };
            // the integrand is increasing in t, so an overflow at y means divergence
            const double top = f(y);
            if (!std::isfinite(top) || top * (y - x) > 1e300) return kInf;
            double err = 0.0;
            return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, x, y, 10, 1e-14, &err);
        }
    }
    return kInf;
}

}  // namespace

double WeightPiece::at(double t) const { return gamma == 0.0 ? coef : coef * std::pow(t, -gamma); }

double WeightPiece::mass(double x, double y) const { return coef == 0.0 ? 0.0 : coef * power_mass(gamma, x, y); }

void Weight::finalize() {
    if (pieces_.empty()) throw std::invalid_argument("Weight needs at least one piece");
    cum_.assign(pieces_.size(), 0.0);
    double acc = mass_below_;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (!(p.b > p.a) || p.coef < 0.0 || p.gamma < 0.0)
            throw std::invalid_argument("Weight: malformed piece");
        if (i > 0 && p.a != pieces_[i - 1].b) throw std::invalid_argument("Weight: pieces must be contiguous");
        if (i > 0 && p.at(std::nextafter(p.a, kInf)) > pieces_[i - 1].at(pieces_[i - 1].b) * (1.0 + 1e-12))
            throw std::invalid_argument("Weight: profile must be nonincreasing");
        cum_[i] = acc;
        if (p.a == 0.0 && p.gamma >= 1.0 && p.coef > 0.0) {
            w_infinite_ = true;
            acc = kInf;
        } else if (std::isinf(p.b)) {
            acc += p.coef > 0.0 && p.gamma <= 1.0 ? kInf : (p.coef > 0.0 ? p.coef * power_mass(p.gamma, p.a, kInf) : 0.0);
        } else {
            acc += p.mass(p.a, p.b);
        }
    }
    t_lo_ = pieces_.front().a;
    end_ = pieces_.back().b;
}

Weight Weight::constant(double c, double end) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("constant weight needs c >= 0");
    Weight w;
    w.kind_ = Kind::constant;
    std::ostringstream os;
    os << "constant(" << c << ")";
    w.name_ = os.str();
    w.pieces_.push_back({0.0, end, c, 0.0});
    w.finalize();
    return w;
}

Weight Weight::power(double gamma, double coef) {
    if (!(gamma >= 0.0) || !(coef > 0.0)) throw std::invalid_argument("power weight needs gamma >= 0, coef > 0");
    Weight w;
    w.kind_ = Kind::power;
    std::ostringstream os;
    os << "power(gamma=" << gamma << (coef != 1.0 ? ",coef=" + format_real(coef) : "") << ")";
    w.name_ = os.str();
    w.pieces_.push_back({0.0, kInf, coef, gamma});
    w.finalize();
    return w;
}

Weight Weight::step(const StepFn& profile) {
    Weight w;
    w.kind_ = Kind::step;
    w.name_ = "step(" + std::to_string(profile.cells()) + " cells)";
    for (std::size_t k = 0; k < profile.cells(); ++k) {
        if (k > 0 && profile.value(k) > profile.value(k - 1))
            throw std::invalid_argument("step weight must be nonincreasing");
        w.pieces_.push_back({profile.left(k), profile.right(k), profile.value(k), 0.0});
    }
    w.finalize();
    return w;
}

Weight Weight::from_sequence(const Seq& s) { return step(seq_to_step(s)); }

Weight Weight::example314(int kmax) {
    if (kmax < 1 || kmax > 20) throw std::invalid_argument("example314: kmax must be in [1, 20]");
    Weight w;
    w.kind_ = Kind::example314;
    w.kmax_ = kmax;
    w.name_ = "example314(kmax=" + std::to_string(kmax) + ")";
    for (int k = kmax; k >= 0; --k)
        w.pieces_.push_back({pow2(-2 * (k + 1) * (k + 1)), pow2(-2 * k * k), pow2(k * k), 0.0});
    double tail = 0.0;
    for (int k = kmax + 1; k < 40; ++k) tail += pow2(-k * k) - pow2(k * k - 2 * (k + 1) * (k + 1));
    w.mass_below_ = tail;
    std::vector<double> tk;
    for (int k = 1; k <= kmax; ++k) tk.push_back(pow2(-2 * k * k));
    w.probes_.push_back(std::move(tk));
    w.finalize();
    return w;
}

Weight Weight::example415(int kmax) {
    if (kmax < 1 || kmax > 20) throw std::invalid_argument("example415: kmax must be in [1, 20]");
    Weight w;
    w.kind_ = Kind::example415;
    w.kmax_ = kmax;
    w.name_ = "example415(kmax=" + std::to_string(kmax) + ")";
    auto crossover = [](int k) { return pow2(-(k + 1) * (k + 1) - k * k); };
    for (int k = kmax; k >= 0; --k) {
        const double lo = pow2(-2 * (k + 1) * (k + 1));
        const double hi = pow2(-2 * k * k);
        w.pieces_.push_back({lo, crossover(k), pow2(-(k + 1) * (k + 1)), 1.0});
        w.pieces_.push_back({crossover(k), hi, pow2(k * k), 0.0});
    }
    double tail = 0.0;
    for (int k = kmax + 1; k < 40; ++k)
        tail += pow2(-(k + 1) * (k + 1)) * (2 * k + 1) * std::numbers::ln2 + pow2(-k * k) - pow2(-(k + 1) * (k + 1));
    w.mass_below_ = tail;
    std::vector<double> tk;
    std::vector<double> ck;
    for (int k = 1; k <= kmax; ++k) {
        tk.push_back(pow2(-2 * k * k));
        ck.push_back(crossover(k));
    }
    w.probes_.push_back(std::move(tk));
    w.probes_.push_back(std::move(ck));
    w.finalize();
    return w;
}

bool Weight::is_step() const {
    if (t_lo_ != 0.0) return false;
    return std::all_of(pieces_.begin(), pieces_.end(), [](const WeightPiece& p) { return p.gamma == 0.0; });
}

StepFn Weight::as_step() const {
    if (!is_step()) throw std::logic_error("weight " + name_ + " is not a step function");
    std::vector<double> b{0.0};
    std::vector<double> v;
    for (const auto& p : pieces_) {
        b.push_back(p.b);
        v.push_back(p.coef);
    }
    return StepFn(std::move(b), std::move(v));
}

std::size_t Weight::piece_index(double t) const {
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                               [](const WeightPiece& p, double x) { return p.b < x; });
    return static_cast<std::size_t>(it - pieces_.begin());
}

double Weight::operator()(double t) const {
    if (!(t > 0.0)) throw std::out_of_range("weight evaluated at t <= 0");
    if (t <= t_lo_) throw std::out_of_range(name_ + ": evaluation below the truncation point");
    if (t > end_) return 0.0;
    return pieces_[piece_index(t)].at(t);
}

double Weight::right_limit(double t) const {
    if (t < t_lo_ || !(t > 0.0 || t_lo_ == 0.0)) throw std::out_of_range(name_ + ": evaluation below the truncation point");
    if (t >= end_) return 0.0;
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double x, const WeightPiece& p) { return x < p.b; });
    return it->at(t);
}

double Weight::cumulative(double t) const {
    if (t <= 0.0) return 0.0;
    if (w_infinite_) return kInf;
    if (t < t_lo_) throw std::out_of_range(name_ + ": cumulative below the truncation point");
    if (t >= end_) t = end_;
    if (std::isinf(t)) {
        const std::size_t i = pieces_.size() - 1;
        const auto& p = pieces_[i];
        if (p.coef == 0.0) return cum_[i];
        return p.gamma <= 1.0 ? kInf : cum_[i] + p.coef * power_mass(p.gamma, p.a, kInf);
    }
    if (t == t_lo_) return mass_below_;
    const std::size_t i = std::min(piece_index(t), pieces_.size() - 1);
    return cum_[i] + pieces_[i].mass(pieces_[i].a, t);
}

double Weight::mass(double x, double y) const {
    const double hi = cumulative(y);
    if (std::isinf(hi)) return kInf;
    return hi - cumulative(x);
}

ExtReal Weight::modular_integral(const OrliczFn& phi, double c, double x, double y) const {
    if (c == 0.0 || y <= x) return ExtReal(0.0);
    double total = 0.0;
    if (x < t_lo_) {
        // Below the truncation phi(c/w)w is bounded by its value at t_lo.
        total += phi_weighted(phi, c, pieces_.front().at(std::nextafter(t_lo_, kInf))) * (std::min(y, t_lo_) - x);
        x = t_lo_;
    }
    if (y > end_) {
        return ExtReal::infinity();
    }
    for (std::size_t i = x >= y ? pieces_.size() : piece_index(std::nextafter(x, kInf)); i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (p.a >= y) break;
        total += piece_modular(phi, c, p, std::max(x, p.a), std::min(y, p.b));
        if (std::isinf(total)) return ExtReal::infinity();
    }
    return ExtReal(total);
}

std::vector<double> Weight::sample_points(std::size_t n) const {
    const double lo = t_lo_ > 0.0 ? t_lo_ * (1.0 + 1e-9) : 1e-8;
    const double hi = std::isfinite(end_) ? end_ : 1e8;
    std::vector<double> pts = log_grid(lo, hi, n);
    for (const auto& p : pieces_) {
        if (p.a > t_lo_ && p.a < end_) {
            pts.push_back(p.a);
            pts.push_back(p.a / 2.0);
        }
    }
    for (const auto& seq : probes_) pts.insert(pts.end(), seq.begin(), seq.end());
    std::erase_if(pts, [&](double t) { return t <= t_lo_ || t > end_ || !(t > 0.0); });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

bool unbounded_trend(const std::vector<double>& r) {
    if (r.size() < 4) return false;
    const std::size_t start = r.size() / 2 - 1;
    double prev_inc = 0.0;
    for (std::size_t i = start; i + 1 < r.size(); ++i) {
        if (!std::isfinite(r[i + 1])) return true;
        const double inc = r[i + 1] - r[i];
        if (!(inc > 0.0)) return false;
        if (i > start && inc < 0.9 * prev_inc) return false;
        prev_inc = inc;
    }
    return true;
}

namespace {

// Sup of ratio(t) over the sample grid plus a growth scan along the probe sequences.
template <class Ratio>
PredicateVerdict scan(const Weight& w, const PredicateConfig& cfg, const std::vector<double>& points,
                      Ratio ratio) {
    PredicateVerdict v;
    for (double t : points) {
        const double r = ratio(t);
        if (r > v.constant || std::isnan(v.constant)) {
            v.constant = r;
            v.witness = t;
        }
    }
    for (const auto& seq : w.probe_sequences()) {
        std::vector<double> rs;
        for (double t : seq) rs.push_back(ratio(t));
        if (unbounded_trend(rs)) {
            v.growth = true;
            v.witness = seq.back();
        }
    }
    v.holds = std::isfinite(v.constant) && v.constant <= cfg.ceiling && !v.growth;
    return v;
}

double safe_ratio(double num, double den) {
    if (num == 0.0) return 0.0;
    if (den == 0.0) return kInf;
    return num / den;
}

}  // namespace

PredicateVerdict is_regular(const Weight& w, const PredicateConfig& cfg) {
    if (w.cumulative_infinite()) {
        PredicateVerdict v;
        v.constant = kInf;
        return v;
    }
    auto ratio = [&](double u) {
        const double big_w = w.cumulative(u);
        double r = safe_ratio(big_w, u * w(u));
        if (u < w.domain_end()) r = std::max(r, safe_ratio(big_w, u * w.right_limit(u)));
        return r;
    };
    return scan(w, cfg, w.sample_points(cfg.points), ratio);
}

PredicateVerdict inv_w_delta2(const Weight& w, const PredicateConfig& cfg) {
    std::vector<double> pts;
    for (double t : w.sample_points(cfg.points))
        if (2.0 * t <= w.domain_end()) pts.push_back(t);
    auto ratio = [&](double t) {
        double r = safe_ratio(w(t), w(2.0 * t));
        if (2.0 * t < w.domain_end()) r = std::max(r, safe_ratio(w.right_limit(t), w.right_limit(2.0 * t)));
        return r;
    };
    return scan(w, cfg, pts, ratio);
}

PredicateVerdict is_phi_controlled(const Weight& w, const OrliczFn& phi, const PredicateConfig& cfg) {
    std::vector<double> pts;
    for (double t : w.sample_points(cfg.points))
        if (2.0 * t <= w.domain_end()) pts.push_back(t);
    const auto cs = log_grid(cfg.c_lo, cfg.c_hi, cfg.c_points);
    auto ratio_at = [&](double wt, double w2t) {
        double best = 0.0;
        for (double c : cs) best = std::max(best, safe_ratio(phi_weighted(phi, c, w2t), phi_weighted(phi, c, wt)));
        return best;
    };
    auto ratio = [&](double t) {
        double r = ratio_at(w(t), w(2.0 * t));
        if (2.0 * t < w.domain_end()) r = std::max(r, ratio_at(w.right_limit(t), w.right_limit(2.0 * t)));
        return r;
    };
    return scan(w, cfg, pts, ratio);
}

double w1_value(const Weight& w, double t) {
    if (!(t > 0.0)) throw std::out_of_range("w1 evaluated at t <= 0");
    return w.cumulative(t) / t;
}

Weight w1_envelope(const Weight& w, int refinement) {
    if (w.cumulative_infinite()) throw std::invalid_argument("w1_envelope: W is identically infinite");
    if (refinement < 1) throw std::invalid_argument("w1_envelope: refinement must be positive");
    if (w.kind() == Weight::Kind::constant) return Weight::constant(w.constant_value(), w.domain_end());
    if (w.kind() == Weight::Kind::power) return Weight::power(w.gamma(), 1.0 / (1.0 - w.gamma()));

    Weight out;
    out.kind_ = Weight::Kind::envelope;
    out.name_ = "w1[" + w.name() + "]";
    auto push = [&](double a, double b) {
        const double value = a == 0.0 ? w.pieces().front().coef : w.cumulative(a) / a;
        out.pieces_.push_back({a, b, value, 0.0});
    };
    for (const auto& p : w.pieces()) {
        if (p.a == 0.0 && p.gamma == 0.0) {
            push(0.0, p.b);  // W(t)/t equals the first value on the first cell
            continue;
        }
        double hi = p.b;
        if (std::isinf(hi)) hi = p.a * std::exp2(40.0);
        const double ratio = std::pow(hi / p.a, 1.0 / refinement);
        double a = p.a;
        for (int j = 0; j < refinement; ++j) {
            const double b = j + 1 == refinement ? hi : a * ratio;
            push(a, b);
            a = b;
        }
        if (std::isinf(p.b)) push(hi, kInf);
    }
    // Mass of the envelope below the truncation is only a lower bound; the
    // envelope is used for modular values, never for its cumulative.
    out.mass_below_ = w.truncation() > 0.0 ? w.cumulative(w.truncation()) : 0.0;
    out.finalize();
    return out;
}

}  // namespace olk
