#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "olk/core.hpp"
#include "olk/orlicz.hpp"
#include "olk/weights.hpp"

namespace olk {

/// sum over merged cells of phi(f/v) v, with phi(c/0) 0 = 0 if c = 0 and inf otherwise.
ExtReal modular_Iv(const StepFn& f, const StepFn& v, const OrliczFn& phi);

/// int phi(f*/w) w.
ExtReal modular_M(const StepFn& f, const Weight& w, const OrliczFn& phi);
/// Sequence form with a weight sequence (zero tail beyond w).
ExtReal modular_m(const Seq& x, const Seq& w, const OrliczFn& phi);

/// inf{eps > 0 : modular(eps) <= 1} for a map eps -> modular(f/eps) that is
/// nonincreasing in eps. `guess` seeds the bracket; returns inf when no eps up
/// to guess * 2^60 works.
double minkowski_gauge(const std::function<ExtReal(double)>& modular_at, double guess,
                       double rel_tol = 1e-15);

/// inf{eps > 0 : M(f/eps) <= 1}.
double luxemburg_norm(const StepFn& f, const Weight& w, const OrliczFn& phi);
double luxemburg_norm(const Seq& x, const Seq& w, const OrliczFn& phi);

/// (M(f+g), M(f) + M(g)) for disjointly supported f, g.
std::pair<ExtReal, ExtReal> check_superadditive(const StepFn& f, const StepFn& g, const Weight& w,
                                                const OrliczFn& phi);

/// (||(sum |f_i|^p)^(1/p)||, (sum ||f_i||^p)^(1/p)). Throws std::domain_error
/// naming the grid witness when phi fails p-concavity.
std::pair<double, double> check_p_concavity(const std::vector<StepFn>& fs, double p, const Weight& w,
                                            const OrliczFn& phi);

}  // namespace olk
