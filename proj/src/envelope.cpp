#include "olk/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "olk/modular.hpp"
#include "olk/rearrange.hpp"

namespace olk {

namespace {

// Variables start with increments u_i >= 0 and v_k = sum_{i >= k} u_i, so v is
// nonincreasing by construction. All constraints are linear, b_j - a_j.x > 0:
//   u_i > 0 and W(B_k) - sum_i u_i B_{min(i,k)} > 0.
// For piecewise-linear phi the cell terms v phi(c/v) = max_i (alpha_i v + beta_i c)
// are not smooth, so epigraph variables s_k follow the increments and the
// objective becomes sum len_k s_k with s_k >= alpha_i v_k + beta_i c_k.
class BarrierProblem {
public:
    BarrierProblem(std::vector<double> c, std::vector<double> len, const std::vector<double>& bounds,
                   const std::vector<double>& cum_w, const OrliczFn& phi)
        : c_(std::move(c)), len_(std::move(len)), phi_(phi), n_(static_cast<int>(c_.size())),
          epigraph_(phi.kind() == OrliczFn::Kind::pwl) {
        const int d = dim();
        auto add = [&](Eigen::VectorXd a, double b) {
            rows_.push_back(std::move(a));
            rhs_.push_back(b);
        };
        for (int i = 0; i < n_; ++i) {
            Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
            a[i] = -1.0;
            add(a, 0.0);
        }
        for (int k = 0; k < n_; ++k) {
            Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
            for (int i = 0; i < n_; ++i) a[i] = bounds[static_cast<std::size_t>(std::min(i, k))];
            add(a, cum_w[static_cast<std::size_t>(k)]);
        }
        if (epigraph_) {
            const auto& pts = phi.points();
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                const double beta = (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);
                const double alpha = pts[i].second - beta * pts[i].first;
                for (int k = 0; k < n_; ++k) {
                    Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
                    for (int j = k; j < n_; ++j) a[j] = alpha;
                    a[n_ + k] = -1.0;
                    add(a, -beta * c_[static_cast<std::size_t>(k)]);
                }
            }
        }
        A_.resize(static_cast<int>(rows_.size()), d);
        for (int j = 0; j < A_.rows(); ++j) A_.row(j) = rows_[static_cast<std::size_t>(j)].transpose();
        b_ = Eigen::Map<const Eigen::VectorXd>(rhs_.data(), static_cast<int>(rhs_.size()));
    }

    int cells() const { return n_; }
    int dim() const { return epigraph_ ? 2 * n_ : n_; }
    int constraints() const { return static_cast<int>(A_.rows()); }

    Eigen::VectorXd levels(const Eigen::VectorXd& x) const {
        Eigen::VectorXd v(n_);
        double acc = 0.0;
        for (int k = n_ - 1; k >= 0; --k) v[k] = (acc += x[k]);
        return v;
    }

    /// Starting point from increments; epigraph variables get a margin above their terms.
    Eigen::VectorXd lift(const Eigen::VectorXd& u) const {
        if (!epigraph_) return u;
        Eigen::VectorXd x(dim());
        x.head(n_) = u;
        const Eigen::VectorXd v = levels(u);
        for (int k = 0; k < n_; ++k) {
            const double t = v[k] * phi_(c_[k] / v[k]);
            x[n_ + k] = t + 0.1 * std::max(t, 1e-3);
        }
        return x;
    }

    /// sum len_k v_k phi(c_k / v_k) at the levels of x.
    double objective(const Eigen::VectorXd& x) const {
        const Eigen::VectorXd v = levels(x);
        double f = 0.0;
        for (int k = 0; k < n_; ++k) f += len_[k] * v[k] * phi_(c_[k] / v[k]);
        return f;
    }

    /// Barrier value tau F - sum log g, or nullopt outside the domain.
    std::optional<double> barrier(const Eigen::VectorXd& x, double tau) const {
        const Eigen::VectorXd g = b_ - A_ * x;
        double b = 0.0;
        for (int j = 0; j < g.size(); ++j) {
            if (!(g[j] > 0.0)) return std::nullopt;
            b -= std::log(g[j]);
        }
        const double f = surrogate(x);
        if (!std::isfinite(f)) return std::nullopt;
        return tau * f + b;
    }

    void derivatives(const Eigen::VectorXd& x, double tau, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
        const int d = dim();
        grad = Eigen::VectorXd::Zero(d);
        hess = Eigen::MatrixXd::Zero(d, d);
        if (epigraph_) {
            for (int k = 0; k < n_; ++k) grad[n_ + k] = tau * len_[k];
        } else {
            const Eigen::VectorXd v = levels(x);
            Eigen::VectorXd dt(n_);
            Eigen::VectorXd dtt(n_);
            for (int k = 0; k < n_; ++k) {
                const double r = c_[k] / v[k];
                dt[k] = len_[k] * (phi_(r) - r * phi_.right_derivative(r));
                dtt[k] = len_[k] * r * r * phi_.second_derivative(r) / v[k];
            }
            // dF/du_i = sum_{k <= i} dt_k ; d2F/du_i du_j = sum_{k <= min(i,j)} dtt_k
            double gacc = 0.0;
            double hacc = 0.0;
            for (int i = 0; i < n_; ++i) {
                gacc += dt[i];
                hacc += dtt[i];
                grad[i] = tau * gacc;
                for (int j = i; j < n_; ++j) hess(i, j) = hess(j, i) = tau * hacc;
            }
        }
        const Eigen::VectorXd inv = (b_ - A_ * x).cwiseInverse();
        grad += A_.transpose() * inv;
        hess += A_.transpose() * inv.cwiseAbs2().asDiagonal() * A_;
    }

    /// Largest step keeping every constraint strictly positive.
    double max_step(const Eigen::VectorXd& x, const Eigen::VectorXd& dir) const {
        const Eigen::VectorXd g = b_ - A_ * x;
        const Eigen::VectorXd ad = A_ * dir;
        double s = 1.0;
        for (int j = 0; j < g.size(); ++j)
            if (ad[j] > 0.0) s = std::min(s, 0.99 * g[j] / ad[j]);
        return s;
    }

private:
    // Function the barrier method minimizes; an upper bound for objective().
    double surrogate(const Eigen::VectorXd& x) const {
        if (!epigraph_) return objective(x);
        double f = 0.0;
        for (int k = 0; k < n_; ++k) f += len_[k] * x[n_ + k];
        return f;
    }

    std::vector<double> c_, len_;
    const OrliczFn& phi_;
    int n_;
    bool epigraph_;
    std::vector<Eigen::VectorXd> rows_;
    std::vector<double> rhs_;
    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
};

struct CenteringStats {
    int steps = 0;
    bool used_gradient = false;
};

// Damped Newton on the barrier; falls back to a gradient direction when the
// Newton system is not usable.
CenteringStats center(const BarrierProblem& prob, Eigen::VectorXd& u, double tau, int max_steps) {
    CenteringStats st;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    for (int it = 0; it < max_steps; ++it) {
        const auto phi0 = prob.barrier(u, tau);
        if (!phi0) break;
        prob.derivatives(u, tau, grad, hess);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        Eigen::VectorXd d;
        bool newton = ldlt.info() == Eigen::Success && ldlt.isPositive();
        if (newton) {
            d = ldlt.solve(-grad);
            newton = d.allFinite() && grad.dot(d) < 0.0;
        }
        if (!newton) {
            d = -grad;
            st.used_gradient = true;
        }
        const double decrement = -grad.dot(d);
        if (!(decrement > 0.0) || decrement * 0.5 <= 1e-12) break;
        double s = prob.max_step(u, d);
        bool moved = false;
        for (int ls = 0; ls < 80; ++ls, s *= 0.5) {
            const Eigen::VectorXd trial = u + s * d;
            const auto phi1 = prob.barrier(trial, tau);
            if (phi1 && *phi1 <= *phi0 - 0.25 * s * decrement) {
                u = trial;
                moved = true;
                break;
            }
        }
        ++st.steps;
        if (!moved) break;
    }
    return st;
}

StepFn levels_to_step(const std::vector<double>& bounds, const Eigen::VectorXd& v, double end) {
    std::vector<double> b{0.0};
    std::vector<double> vals;
    for (std::size_t k = 0; k < bounds.size(); ++k) {
        b.push_back(bounds[k]);
        vals.push_back(v[static_cast<int>(k)]);
    }
    if (end > b.back()) {
        b.push_back(end);
        vals.push_back(0.0);
    } else {
        b.back() = end;
    }
    return StepFn(std::move(b), std::move(vals));
}

}  // namespace

EnvelopeSolution envelope_modular_P(const StepFn& f, const Weight& w, const OrliczFn& phi,
                                    const EnvelopeOptions& opt) {
    if (w.cumulative_infinite()) throw std::invalid_argument("envelope_modular_P: W is identically infinite");
    if (f.domain_end() != w.domain_end())
        throw std::invalid_argument("envelope_modular_P: f and w live on different intervals");
    EnvelopeSolution sol;
    sol.minimizer = StepFn::zero(f.domain_end());

    if (opt.compute_bounds) {
        sol.upper = modular_M(f, w, phi);
        if (opt.w1) {
            sol.lower = modular_M(f, *opt.w1, phi);
        } else {
            sol.lower = modular_M(f, w1_envelope(w, opt.w1_refinement), phi);
        }
        // w1 >= w gives M1 <= M; enforce it against rounding in the two evaluations.
        sol.lower = min(sol.lower, sol.upper);
    }

    const StepFn fs = decreasing_rearrangement(f);
    std::vector<double> c, len, bounds, cum;
    for (std::size_t k = 0; k < fs.cells(); ++k) {
        if (fs.value(k) == 0.0) break;
        if (std::isinf(fs.length(k))) {
            sol.value = sol.lower = sol.upper = ExtReal::infinity();
            sol.raw = kInf;
            return sol;
        }
        c.push_back(fs.value(k));
        len.push_back(fs.length(k));
        bounds.push_back(fs.right(k));
        cum.push_back(w.cumulative(fs.right(k)));
    }
    const int n = static_cast<int>(c.size());
    if (n == 0) {
        sol.value = ExtReal(0.0);
        return sol;
    }
    if (!(cum.front() > 0.0)) {
        sol.value = sol.lower = sol.upper = ExtReal::infinity();
        sol.raw = kInf;
        return sol;
    }

    BarrierProblem prob(c, len, bounds, cum, phi);

    // Strictly feasible start: 0.9 x cell averages of w plus a uniform increment.
    Eigen::VectorXd avg(n);
    double prev = 0.0;
    for (int k = 0; k < n; ++k) {
        avg[k] = (cum[k] - prev) / len[k];
        prev = cum[k];
    }
    for (int k = 1; k < n; ++k) avg[k] = std::min(avg[k], avg[k - 1]);
    const double delta = 0.05 * cum.back() / (n * bounds.back());
    Eigen::VectorXd u0(n);
    for (int k = 0; k < n; ++k) u0[k] = 0.9 * (avg[k] - (k + 1 < n ? avg[k + 1] : 0.0)) + delta;
    for (int k = 0; k < n; ++k) u0[k] = std::max(u0[k], delta);
    Eigen::VectorXd u = prob.lift(u0);

    const double f_avg = prob.objective([&] {
        Eigen::VectorXd ua(n);
        for (int k = 0; k < n; ++k) ua[k] = std::max(avg[k] - (k + 1 < n ? avg[k + 1] : 0.0), 0.0);
        return ua;
    }());

    double f0 = prob.objective(u);
    if (!std::isfinite(f0)) {
        sol.value = ExtReal::infinity();
        sol.raw = kInf;
        return sol;
    }
    const double m = prob.constraints();
    double tau = m / std::max(f0, 1e-300);
    for (int round = 0; round < 200; ++round) {
        const auto st = center(prob, u, tau, opt.max_newton);
        sol.iterations += st.steps;
        sol.fallback = sol.fallback || st.used_gradient;
        const double fv = prob.objective(u);
        if (m / tau <= opt.tol * fv) break;
        tau *= 10.0;
    }
    const double fv = prob.objective(u);
    sol.gap = m / tau / fv;

    Eigen::VectorXd v = prob.levels(u);
    sol.raw = fv;
    if (std::isfinite(f_avg) && f_avg < fv) {
        // the averaged weight is feasible and already better
        for (int k = 0; k < n; ++k) v[k] = avg[k];
        sol.raw = f_avg;
    }
    sol.minimizer = levels_to_step(bounds, v, f.domain_end());

    double value = sol.raw;
    if (opt.compute_bounds) {
        value = std::min(value, sol.upper.value());
        value = std::max(value, sol.lower.value());
    }
    sol.value = ExtReal(value);
    return sol;
}

EnvelopeSolution envelope_modular_p(const Seq& x, const Seq& w, const OrliczFn& phi, const EnvelopeOptions& opt) {
    return envelope_modular_P(seq_to_step(x), Weight::from_sequence(w), phi, opt);
}

bool submajorized_by_weight(const StepFn& v, const Weight& w, double rel_slack) {
    const StepFn vs = decreasing_rearrangement(v);
    double acc = 0.0;
    for (std::size_t k = 0; k < vs.cells(); ++k) {
        if (std::isinf(vs.length(k))) {
            if (vs.value(k) == 0.0) return true;
            return std::isinf(w.domain_end()) && vs.value(k) <= w(1e300);
        }
        acc += vs.value(k) * vs.length(k);
        const double cap = w.cumulative(vs.right(k));
        if (acc > cap * (1.0 + rel_slack)) return false;
    }
    return true;
}

double envelope_norm(const StepFn& f, const Weight& w, const OrliczFn& phi, double tol) {
    if (f.sup() == 0.0) return 0.0;
    const Weight w1 = w1_envelope(w);
    EnvelopeOptions opt;
    opt.tol = tol * 1e-3;
    opt.compute_bounds = false;
    auto p_at = [&](double eps) { return envelope_modular_P(f.scaled(1.0 / eps), w, phi, opt).value; };

    double lo = luxemburg_norm(f, w1, phi);
    double hi = luxemburg_norm(f, w, phi);
    if (std::isinf(lo)) return kInf;
    if (std::isinf(hi)) {
        hi = lo;
        while (p_at(hi) > ExtReal(1.0)) {
            hi *= 2.0;
            if (hi > lo * 1152921504606846976.0) return kInf;
        }
    }
    lo *= 1.0 - 1e-12;
    for (int it = 0; it < 200 && hi - lo > tol * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi)) break;
        (p_at(mid) <= ExtReal(1.0) ? hi : lo) = mid;
    }
    return hi;
}

double fundamental_M_env(double t, const Weight& w, const OrliczFn& phi) {
    const double big_w = w.cumulative(t);
    if (!(big_w > 0.0)) return kInf;
    if (std::isinf(big_w)) throw std::invalid_argument("fundamental_M_env: W(t) is infinite");
    return t / (big_w * phi.inverse(1.0 / big_w));
}

double fundamental_M(double t, const Weight& w, const OrliczFn& phi) {
    return luxemburg_norm(StepFn::indicator(t, w.domain_end()), w, phi);
}

double fundamental_G(double t, const Weight& w, const OrliczFn& phi) {
    const double wt = w(t);
    if (!(wt > 0.0)) return kInf;
    return 1.0 / (wt * phi.inverse(1.0 / (t * wt)));
}

std::vector<RatioPoint> indicator_ratio_profile(const Weight& w, const OrliczFn& phi, const std::vector<double>& ts) {
    std::vector<RatioPoint> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back({t, fundamental_M(t, w, phi) / fundamental_M_env(t, w, phi)});
    return out;
}

EquivalenceReport check_regular_equivalence(const Weight& w, const OrliczFn& phi, const std::vector<StepFn>& sample,
                                            double tol) {
    EquivalenceReport rep;
    const auto reg = is_regular(w);
    rep.regular = reg.holds;
    rep.constant = reg.constant;
    if (rep.regular) {
        rep.holds = true;
        for (const auto& f : sample) {
            const double env = envelope_norm(f, w, phi, tol * 1e-2);
            if (env == 0.0) continue;
            const double ratio = luxemburg_norm(f, w, phi) / env;
            rep.worst_ratio = std::max(rep.worst_ratio, ratio);
            if (ratio > rep.constant * (1.0 + tol)) rep.holds = false;
        }
        return rep;
    }
    // Non-regular: look for unbounded growth of the indicator ratio. The ratio
    // behaves like a power of the distance along the probes, so it is first
    // raised to alpha/(alpha-1) with alpha the lower index of phi.
    const double alpha = matuszewska_indices(phi).alpha;
    rep.growth_exponent = alpha > 1.0 + 1e-9 ? alpha / (alpha - 1.0) : 1.0;
    for (const auto& seq : w.probe_sequences()) {
        auto prof = indicator_ratio_profile(w, phi, seq);
        std::vector<double> powered;
        bool increasing = true;
        for (std::size_t i = 0; i < prof.size(); ++i) {
            powered.push_back(std::pow(prof[i].ratio, rep.growth_exponent));
            if (i > 0 && !(prof[i].ratio > prof[i - 1].ratio)) increasing = false;
        }
        if (increasing && unbounded_trend(powered)) {
            rep.unbounded = true;
            rep.profile = std::move(prof);
        } else if (rep.profile.empty()) {
            rep.profile = std::move(prof);
        }
    }
    rep.holds = rep.unbounded;
    return rep;
}

}  // namespace olk
