#pragma once

#include <vector>

#include "olk/core.hpp"
#include "olk/orlicz.hpp"
#include "olk/weights.hpp"

namespace olk {

struct EnvelopeOptions {
    double tol = 1e-6;           ///< relative gap target for the barrier method
    int max_newton = 60;         ///< Newton steps per centering
    bool compute_bounds = true;  ///< evaluate M and M1 alongside
    int w1_refinement = 16;
    const Weight* w1 = nullptr;  ///< precomputed w1_envelope(w), optional
};

struct EnvelopeSolution {
    ExtReal value;          ///< clamped into [lower, upper]
    double raw = 0.0;       ///< objective at the returned minimizer
    StepFn minimizer = StepFn::zero();
    double gap = 0.0;       ///< relative barrier gap bound at termination
    ExtReal lower;          ///< M1(f) with the w1 step overestimate (a lower bound)
    ExtReal upper;          ///< M(f)
    int iterations = 0;     ///< total Newton steps
    bool fallback = false;  ///< gradient steps were needed
};

/// inf of int phi(f/v) v over nonincreasing v >= 0 submajorized by w.
EnvelopeSolution envelope_modular_P(const StepFn& f, const Weight& w, const OrliczFn& phi,
                                    const EnvelopeOptions& opt = {});
/// Sequence form with a weight sequence.
EnvelopeSolution envelope_modular_p(const Seq& x, const Seq& w, const OrliczFn& phi,
                                    const EnvelopeOptions& opt = {});

/// True when the nonincreasing v satisfies int_0^t v <= W(t) at all its breakpoints.
bool submajorized_by_weight(const StepFn& v, const Weight& w, double rel_slack = 1e-12);

/// inf{eps > 0 : P(f/eps) <= 1}, to relative accuracy tol.
double envelope_norm(const StepFn& f, const Weight& w, const OrliczFn& phi, double tol = 1e-9);

/// t / (W(t) phi^-1(1/W(t))).
double fundamental_M_env(double t, const Weight& w, const OrliczFn& phi);
/// Luxemburg norm of the indicator of (0, t].
double fundamental_M(double t, const Weight& w, const OrliczFn& phi);
/// 1 / (w(t) phi^-1(1/(t w(t)))).
double fundamental_G(double t, const Weight& w, const OrliczFn& phi);

struct RatioPoint {
    double t = 0.0;
    double ratio = 0.0;  ///< ||indicator||_M / F_env(t)
};

/// Ratio of the two fundamental functions at each t.
std::vector<RatioPoint> indicator_ratio_profile(const Weight& w, const OrliczFn& phi,
                                                const std::vector<double>& ts);

struct EquivalenceReport {
    bool regular = false;
    double constant = 0.0;      ///< regularity constant when regular
    double worst_ratio = 0.0;   ///< max ||f||_M / ||f||_env over the sample
    std::vector<RatioPoint> profile;  ///< indicator ratios along the probe points
    double growth_exponent = 1.0;     ///< power applied to the profile before the trend test
    bool unbounded = false;           ///< profile grows without bound
    bool holds = false;
};

/// Regular w: ||f||_M <= C ||f||_env on every f in `sample`. Non-regular w with
/// probe sequences: the indicator ratio grows without bound along the probes.
EquivalenceReport check_regular_equivalence(const Weight& w, const OrliczFn& phi,
                                            const std::vector<StepFn>& sample, double tol = 1e-6);

}  // namespace olk
