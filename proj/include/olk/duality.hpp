#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "olk/core.hpp"
#include "olk/orlicz.hpp"
#include "olk/weights.hpp"

namespace olk {

struct DualNormResult {
    double value = 0.0;
    double amemiya_k = 0.0;            ///< minimizing k of the Amemiya formula
    StepFn profile = StepFn::zero();   ///< h with attainer g = w h, on the grid of f*
    std::optional<StepFn> attainer;    ///< g = w h, available for step weights
    double lambda = 0.0;               ///< multiplier in h = (phi')^-1(f*/lambda)
    double modular = 0.0;              ///< M(g) of the attainer
    bool stalled = false;              ///< multiplier search hit a flat of phi'
    double delta = 0.05;               ///< accepted relative shortfall against Amemiya
};

/// inf_k (1 + int phi_star(k f*) w) / k by golden section on an expanding bracket.
DualNormResult orlicz_norm_amemiya(const StepFn& f, const Weight& w,
                                   const std::function<double(double)>& phi_star, double tol = 1e-12);
/// Same with phi_star given as an Orlicz function; it must be an N-function.
DualNormResult orlicz_norm_amemiya(const StepFn& f, const Weight& w, const OrliczFn& phi_star,
                                   double tol = 1e-12);

struct HolderSides {
    double pairing = 0.0;  ///< int |f g|
    double bound = 0.0;    ///< Amemiya norm of f for the conjugate times ||g||_M
};

HolderSides holder_pairing(const StepFn& f, const StepFn& g, const Weight& w, const OrliczFn& phi,
                           double tol = 1e-12);

/// Lower bound for the Orlicz norm of f: pairing with g = w h where h solves
/// the stationarity condition and M(g) = 1.
DualNormResult norming_supremum(const StepFn& f, const Weight& w, const OrliczFn& phi, double tol = 1e-12);

struct TrivialDualStep {
    double log_ratio = 0.0;  ///< L = ln(b/u)
    double c = 0.0;          ///< phi^-1(1 / (1 + L))
    double pairing = 0.0;    ///< c (1 + L)
    double modular = 0.0;    ///< M(c f_u)
};

struct TrivialDualProbe {
    std::vector<TrivialDualStep> steps;
    bool diverged = false;         ///< pairing crossed the ceiling
    bool modular_bounded = true;   ///< every M(c f_u) <= 1
};

/// For w(t) = 1/t (W identically infinite): test functions (w ^ w(u)) on (0, b]
/// normalized to unit modular have pairings that grow without bound as u -> 0.
TrivialDualProbe trivial_dual_probe(double b, const Weight& w, const OrliczFn& phi, double ceiling = 1e3);

}  // namespace olk
