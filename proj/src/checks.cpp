#include "olk/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "olk/duality.hpp"
#include "olk/envelope.hpp"
#include "olk/modular.hpp"
#include "olk/oracle.hpp"
#include "olk/rearrange.hpp"

namespace olk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool close_rel(double a, double b, double rel) {
    if (a == b) return true;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

bool le_rel(double a, double b, double rel) { return a <= b || a <= b + rel * std::abs(b); }

double ext(ExtReal x) { return x.value(); }

TrialRow make_row(const TrialContext& ctx, const Json& inputs) {
    TrialRow r;
    r.trial = ctx.trial;
    r.seed = ctx.seed;
    r.digest = fnv1a_hex(inputs.dump());
    return r;
}

Json inputs_of(const OrliczFn& phi, const Weight& w) {
    Json j;
    j["phi"] = phi_to_json(phi);
    j["weight"] = weight_to_json(w);
    return j;
}

// -- suites ---------------------------------------------------------------

TrialRow prop_finite(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const std::size_t n = 2 + uniform_index(rng, 6);
    const Seq w = gen::decreasing_seq(rng, n);
    const Seq x = gen::seq(rng, n);
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    const OrliczFn phi = OrliczFn::power(ps[uniform_index(rng, 4)]);
    Json in;
    in["phi"] = phi_to_json(phi);
    in["x"] = seq_to_json(x);
    in["w"] = seq_to_json(w);
    TrialRow r = make_row(ctx, in);
    r.lhs = ext(min_over_permutations(x, w, phi).value);
    r.rhs = ext(modular_m(x, w, phi));
    r.pass = close_rel(r.lhs, r.rhs, 1e-12);
    return r;
}

TrialRow balanced_matrix(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const std::size_t n = 2 + uniform_index(rng, 5);
    const Seq w = gen::decreasing_seq(rng, n);
    const Seq x = gen::seq(rng, n);
    const OrliczFn phi = gen::phi(rng);
    const Matrix a = random_balanced_matrix(n, rng);
    Json in;
    in["phi"] = phi_to_json(phi);
    in["x"] = seq_to_json(x);
    in["w"] = seq_to_json(w);
    in["A"] = a;
    TrialRow r = make_row(ctx, in);
    const auto s = balanced_matrix_check(x, w, a, phi);
    r.lhs = s.lhs;
    r.rhs = s.rhs;
    r.pass = le_rel(r.lhs, r.rhs, 1e-12);
    return r;
}

// Sorting arrangement: the weight entry w(i) placed where the i-th largest |x| sits.
Seq sorting_arrangement(const Seq& x, const Seq& w) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(x[a]) > std::abs(x[b]); });
    std::vector<double> v(x.size(), 0.0);
    for (std::size_t i = 0; i < order.size() && i < w.size(); ++i) v[order[i]] = w[i];
    return Seq(std::move(v));
}

TrialRow seq_infimum(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const std::size_t n = 2 + uniform_index(rng, 8);
    const std::size_t pad = uniform_index(rng, 4);
    const bool starved = ctx.trial % 10 == 9;  // fewer positive weights than nonzero entries
    Seq w = gen::decreasing_seq(rng, starved ? n - 1 : n);
    Seq x = gen::seq(rng, n);
    if (starved)
        for (double& e : x.entries)
            if (e == 0.0) e = 1.0;
    const OrliczFn phi = gen::phi(rng);
    const Seq v = random_equimeasurable(w, pad + (starved ? 1 : 0), ctx.seed ^ 0x5bd1e995ULL);
    std::vector<double> xp(x.entries);
    xp.resize(v.size(), 0.0);
    const Seq xpad(xp);
    Json in;
    in["phi"] = phi_to_json(phi);
    in["x"] = seq_to_json(x);
    in["w"] = seq_to_json(w);
    in["v"] = seq_to_json(v);
    TrialRow r = make_row(ctx, in);
    r.lhs = ext(modular_m(x, w, phi));
    r.rhs = ext(modular_Iv(seq_to_step(xpad), seq_to_step(v), phi));
    const double sorted = ext(modular_Iv(seq_to_step(xpad), seq_to_step(sorting_arrangement(xpad, w)), phi));
    r.extra["sorted_arrangement"] = sorted;
    if (starved) {
        r.pass = std::isinf(r.lhs) && std::isinf(r.rhs);
        r.note = "starved weight";
    } else {
        r.pass = le_rel(r.lhs, r.rhs, 1e-12) && close_rel(sorted, r.lhs, 1e-12);
    }
    return r;
}

TrialRow sandwich(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const Weight w = gen::weight(rng);
    const OrliczFn phi = gen::phi(rng);
    const bool small = ctx.trial % 2 == 0;
    const StepFn f = small ? gen::positive_step(rng, 1 + uniform_index(rng, 3), w.domain_end())
                           : gen::step(rng, 6, w.domain_end());
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    TrialRow r = make_row(ctx, in);
    EnvelopeOptions opt;
    opt.tol = ctx.tol;
    const auto sol = envelope_modular_P(f, w, phi, opt);
    r.lhs = ext(sol.value);
    r.rhs = ext(sol.upper);
    r.extra["lower"] = ext(sol.lower);
    r.extra["raw"] = sol.raw;
    r.extra["iterations"] = sol.iterations;
    const bool minimizer_ok = submajorized_by_weight(sol.minimizer, w);
    r.pass = sol.lower <= sol.value && sol.value <= sol.upper && minimizer_ok;
    if (!minimizer_ok) r.note = "minimizer not submajorized";
    if (small && sol.value.is_finite()) {
        const double grid = grid_search_P_refined(f, w, phi, 60, 6);
        r.extra["oracle"] = grid;
        if (!close_rel(grid, r.lhs, 1e-4)) {
            r.pass = false;
            r.note = "oracle mismatch";
        }
    }
    return r;
}

// Disjoint pair on a common random grid.
std::pair<StepFn, StepFn> disjoint_pair(std::mt19937_64& rng, double end) {
    const StepFn base = gen::step(rng, 8, end, 0.0);
    std::vector<double> fv, gv;
    for (std::size_t k = 0; k < base.cells(); ++k) {
        const std::size_t owner = uniform_index(rng, 3);
        const double v = std::isinf(base.length(k)) ? 0.0 : base.value(k);
        fv.push_back(owner == 0 ? v : 0.0);
        gv.push_back(owner == 1 ? v : 0.0);
    }
    return {StepFn(base.breakpoints(), fv), StepFn(base.breakpoints(), gv)};
}

TrialRow superadditive(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const Weight w = gen::weight(rng);
    const OrliczFn phi = gen::phi(rng);
    const auto [f, g] = disjoint_pair(rng, w.domain_end());
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    in["g"] = stepfn_to_json(g);
    TrialRow r = make_row(ctx, in);
    const auto [joint, separate] = check_superadditive(f, g, w, phi);
    r.lhs = ext(separate);
    r.rhs = ext(joint);
    r.pass = le_rel(r.lhs, r.rhs, 1e-12);
    return r;
}

TrialRow p_concavity(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    const double p = ps[uniform_index(rng, 4)];
    const OrliczFn phi = OrliczFn::power(p);
    const Weight w = gen::weight(rng, false, false);
    std::vector<StepFn> fs;
    const std::size_t m = 2 + uniform_index(rng, 2);
    Json in = inputs_of(phi, w);
    in["p"] = p;
    for (std::size_t i = 0; i < m; ++i) {
        fs.push_back(gen::step(rng, 5, w.domain_end()));
        in["fs"].push_back(stepfn_to_json(fs.back()));
    }
    TrialRow r = make_row(ctx, in);
    const auto [combined, separate] = check_p_concavity(fs, p, w, phi);
    r.lhs = separate;
    r.rhs = combined;
    r.pass = le_rel(r.lhs, r.rhs, 1e-9);
    return r;
}

StepFn permute_cells(const StepFn& f, std::mt19937_64& rng) {
    // Bounded cells are shuffled; an unbounded tail stays last.
    std::vector<std::pair<double, double>> cells;
    for (std::size_t k = 0; k < f.cells(); ++k)
        if (std::isfinite(f.length(k))) cells.emplace_back(f.length(k), f.value(k));
    for (std::size_t i = cells.size(); i > 1; --i) std::swap(cells[i - 1], cells[uniform_index(rng, i)]);
    std::vector<double> b{0.0};
    std::vector<double> v;
    for (const auto& [len, val] : cells) {
        b.push_back(b.back() + len);
        v.push_back(val);
    }
    if (std::isinf(f.domain_end())) {
        b.push_back(kInf);
        v.push_back(f.values().back());
    } else {
        b.back() = f.domain_end();
    }
    return StepFn(std::move(b), std::move(v));
}

TrialRow ri_envelope(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const Weight w = gen::weight(rng);
    const OrliczFn phi = gen::phi(rng);
    const StepFn f = gen::step(rng, 6, w.domain_end());
    const StepFn g = permute_cells(f, rng);
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    in["g"] = stepfn_to_json(g);
    TrialRow r = make_row(ctx, in);
    EnvelopeOptions opt;
    opt.tol = ctx.tol;
    opt.compute_bounds = false;
    r.lhs = ext(envelope_modular_P(f, w, phi, opt).value);
    r.rhs = ext(envelope_modular_P(g, w, phi, opt).value);
    r.pass = close_rel(r.lhs, r.rhs, 1e-5);
    return r;
}

TrialRow convexity_envelope(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const Weight w = gen::weight(rng);
    const OrliczFn phi = gen::phi(rng);
    const StepFn f = gen::step(rng, 5, w.domain_end());
    const StepFn g = gen::step(rng, 5, w.domain_end());
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    in["g"] = stepfn_to_json(g);
    TrialRow r = make_row(ctx, in);
    EnvelopeOptions opt;
    opt.tol = ctx.tol;
    opt.compute_bounds = false;
    const StepFn mid = (f + g).scaled(0.5);
    r.lhs = ext(envelope_modular_P(mid, w, phi, opt).value);
    r.rhs = 0.5 * (ext(envelope_modular_P(f, w, phi, opt).value) + ext(envelope_modular_P(g, w, phi, opt).value));
    r.pass = le_rel(r.lhs, r.rhs, 1e-6);
    return r;
}

struct CatalogPair {
    Weight w;
    OrliczFn phi;
};

const std::vector<CatalogPair>& catalog_pairs() {
    static const std::vector<CatalogPair> pairs = {
        {Weight::constant(1.0), OrliczFn::power(2.0)},
        {Weight::power(0.5), OrliczFn::power(2.0)},
        {Weight::step(StepFn({0.0, 1.0, 2.5, kInf}, {3.0, 2.0, 1.0})), OrliczFn::expm1()},
        {Weight::example415(), OrliczFn::power(3.0)},
        {Weight::power(0.5), OrliczFn::pwl({{1.0, 0.5}, {2.0, 2.0}, {4.0, 8.0}})},
    };
    return pairs;
}

// Log-uniform t with 2t still inside the interval.
double sample_t(std::mt19937_64& rng, const Weight& w) {
    const double lo = std::isfinite(w.domain_end()) ? 1e-3 * w.domain_end() : 1e-3;
    const double hi = std::isfinite(w.domain_end()) ? 0.5 * w.domain_end() : 1e3;
    return std::exp(uniform_real(rng, std::log(lo), std::log(hi)));
}

TrialRow fundamental_sandwich(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const auto& pair = catalog_pairs()[ctx.trial % catalog_pairs().size()];
    const double t = sample_t(rng, pair.w);
    Json in = inputs_of(pair.phi, pair.w);
    in["t"] = t;
    TrialRow r = make_row(ctx, in);
    const double f1 = fundamental_M(t, pair.w, pair.phi);
    const double g1 = fundamental_G(t, pair.w, pair.phi);
    const double f2 = fundamental_M(2.0 * t, pair.w, pair.phi);
    r.extra["F_M(t)"] = f1;
    r.extra["G_M(t)"] = g1;
    r.extra["F_M(2t)"] = f2;
    r.lhs = std::max(f1 / g1, g1 / f2);
    r.rhs = 1.0;
    r.pass = le_rel(f1, g1, 1e-9) && le_rel(g1, f2, 1e-9);
    return r;
}

TrialRow fundamental_env(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const auto& pair = catalog_pairs()[ctx.trial % 4];
    const double t = sample_t(rng, pair.w);
    Json in = inputs_of(pair.phi, pair.w);
    in["t"] = t;
    TrialRow r = make_row(ctx, in);
    r.lhs = envelope_norm(StepFn::indicator(t, pair.w.domain_end()), pair.w, pair.phi, 1e-10);
    r.rhs = fundamental_M_env(t, pair.w, pair.phi);
    r.pass = std::abs(r.lhs - r.rhs) <= 1e-6 * std::max(1.0, r.rhs);
    return r;
}

TrialRow regular_equivalence(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const std::size_t which = ctx.trial % 3;
    const OrliczFn phi = OrliczFn::power(2.0);
    const Weight w = which == 0 ? Weight::constant(1.0) : which == 1 ? Weight::power(0.5) : Weight::example415();
    Json in = inputs_of(phi, w);
    std::vector<StepFn> sample;
    if (which < 2) {
        sample.push_back(gen::step(rng, 5, w.domain_end()));
        in["f"] = stepfn_to_json(sample.back());
    }
    TrialRow r = make_row(ctx, in);
    const auto rep = check_regular_equivalence(w, phi, sample, 1e-6);
    if (which < 2) {
        r.lhs = rep.worst_ratio;
        r.rhs = rep.constant;
        r.pass = rep.regular && rep.holds;
    } else {
        r.lhs = rep.profile.empty() ? 0.0 : rep.profile.back().ratio;
        r.rhs = rep.profile.empty() ? 0.0 : rep.profile.front().ratio;
        r.extra["growth_exponent"] = rep.growth_exponent;
        r.pass = !rep.regular && rep.unbounded;
        r.note = "indicator ratio along crossover points";
    }
    return r;
}

TrialRow holder(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const Weight w = gen::weight(rng);
    const OrliczFn phi = gen::phi(rng, true);
    const StepFn f = gen::step(rng, 5, w.domain_end());
    const StepFn g = gen::step(rng, 5, w.domain_end());
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    in["g"] = stepfn_to_json(g);
    TrialRow r = make_row(ctx, in);
    const auto s = holder_pairing(f, g, w, phi);
    r.lhs = s.pairing;
    r.rhs = s.bound;
    r.pass = le_rel(r.lhs, r.rhs, 1e-6);
    return r;
}

TrialRow norming(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const double ps[] = {1.5, 2.0, 3.0, 4.0};
    const OrliczFn phi = OrliczFn::power_normalized(ps[uniform_index(rng, 4)]);
    const Weight w = gen::weight(rng, false);
    const StepFn f = decreasing_rearrangement(gen::step(rng, 5, w.domain_end()));
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    TrialRow r = make_row(ctx, in);
    const auto sup = norming_supremum(f, w, phi);
    const auto am = orlicz_norm_amemiya(f, w, [&](double t) { return phi.conjugate(t); });
    r.lhs = sup.value;
    r.rhs = am.value;
    r.extra["modular"] = sup.modular;
    r.pass = r.lhs >= (1.0 - sup.delta) * r.rhs && le_rel(r.lhs, r.rhs, 1e-9) && sup.modular <= 1.0 + 1e-9;
    return r;
}

TrialRow trivial_dual(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const double b = uniform_real(rng, 0.5, 3.0);
    const Weight w = Weight::power(1.0);
    const bool linear = ctx.trial % 6 == 5;
    const OrliczFn phi = linear ? OrliczFn::power(1.0) : gen::phi(rng, true);
    Json in = inputs_of(phi, w);
    in["b"] = b;
    TrialRow r = make_row(ctx, in);
    r.rhs = 1e3;
    if (linear) {
        try {
            trivial_dual_probe(b, w, phi);
            r.note = "linear phi accepted";
        } catch (const std::invalid_argument&) {
            r.pass = true;
            r.note = "linear phi rejected";
        }
        return r;
    }
    const auto probe = trivial_dual_probe(b, w, phi, r.rhs);
    r.lhs = probe.steps.back().pairing;
    double worst = 0.0;
    for (const auto& s : probe.steps) worst = std::max(worst, s.modular);
    r.extra["max_modular"] = worst;
    r.pass = probe.diverged && probe.modular_bounded;
    return r;
}

TrialRow hl_pairing(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const StepFn f = gen::step(rng, 6);
    const StepFn g = gen::step(rng, 6);
    Json in;
    in["f"] = stepfn_to_json(f);
    in["g"] = stepfn_to_json(g);
    TrialRow r = make_row(ctx, in);
    const auto s = hardy_littlewood_check(f, g);
    r.lhs = ext(s.lhs);
    r.rhs = ext(s.rhs);
    r.pass = le_rel(r.lhs, r.rhs, 1e-12);
    return r;
}

TrialRow exchange(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const double s2 = uniform_real(rng, 0.1, 5.0);
    const double s1 = s2 + uniform_real(rng, 0.0, 5.0);
    const double t2 = uniform_real(rng, 0.1, 5.0);
    const double t1 = t2 + uniform_real(rng, 0.0, 5.0);
    const OrliczFn phi = gen::phi(rng);
    Json in;
    in["phi"] = phi_to_json(phi);
    in["s"] = {s1, s2};
    in["t"] = {t1, t2};
    TrialRow r = make_row(ctx, in);
    const auto e = exchange_inequality(s1, s2, t1, t2, phi);
    r.lhs = e.sorted_side;
    r.rhs = e.swapped_side;
    r.pass = le_rel(r.lhs, r.rhs, 1e-12);
    return r;
}

TrialRow lp_identity(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    const double p = ps[uniform_index(rng, 4)];
    const OrliczFn phi = OrliczFn::power(p);
    const Weight w = Weight::constant(1.0);
    const StepFn f = gen::step(rng, 6);
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    TrialRow r = make_row(ctx, in);
    double s = 0.0;
    for (std::size_t k = 0; k < f.cells(); ++k)
        if (f.value(k) > 0.0) s += std::pow(f.value(k), p) * f.length(k);
    r.lhs = luxemburg_norm(f, w, phi);
    r.rhs = std::pow(s, 1.0 / p);
    r.pass = close_rel(r.lhs, r.rhs, 1e-8);
    return r;
}

TrialRow l1_identity(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const OrliczFn phi = OrliczFn::power(1.0);
    const Weight w = Weight::constant(1.0);
    const StepFn f = gen::step(rng, 6);
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    TrialRow r = make_row(ctx, in);
    const double l1 = integrate(f).value();
    const double lux = luxemburg_norm(f, w, phi);
    const double env = envelope_norm(f, w, phi, 1e-9);
    r.lhs = env;
    r.rhs = l1;
    r.extra["luxemburg"] = lux;
    r.pass = std::abs(env - l1) <= 1e-6 && std::abs(lux - l1) <= 1e-6;
    return r;
}

TrialRow weight_verdicts(const TrialContext& ctx) {
    Json in;
    TrialRow r;
    switch (ctx.trial % 4) {
        case 0: {
            const auto v = is_regular(Weight::constant(1.0));
            in["case"] = "constant regular";
            r = make_row(ctx, in);
            r.lhs = v.constant;
            r.rhs = 1.0;
            r.pass = v.holds && close_rel(v.constant, 1.0, 1e-12);
            break;
        }
        case 1: {
            const auto v = is_regular(Weight::power(0.5));
            in["case"] = "power regular";
            r = make_row(ctx, in);
            r.lhs = v.constant;
            r.rhs = 2.0;
            r.pass = v.holds && close_rel(v.constant, 2.0, 1e-9);
            break;
        }
        case 2: {
            const Weight w = Weight::example314();
            const auto v = inv_w_delta2(w);
            in["case"] = "example314 delta2";
            r = make_row(ctx, in);
            r.lhs = v.constant;
            r.rhs = v.witness;
            const auto& tk = w.probe_sequences().front();
            r.pass = !v.holds && std::find(tk.begin(), tk.end(), v.witness) != tk.end();
            break;
        }
        default: {
            const Weight w = Weight::example415();
            const auto d = inv_w_delta2(w);
            const auto reg = is_regular(w);
            in["case"] = "example415 delta2 and regularity";
            r = make_row(ctx, in);
            r.lhs = d.constant;
            r.rhs = reg.constant;
            r.pass = d.holds && !reg.holds;
            break;
        }
    }
    return r;
}

TrialRow triangle_envelope(const TrialContext& ctx) {
    std::mt19937_64 rng(ctx.seed);
    const Weight w = gen::weight(rng);
    const OrliczFn phi = gen::phi(rng);
    const StepFn f = gen::step(rng, 4, w.domain_end());
    const StepFn g = gen::step(rng, 4, w.domain_end());
    Json in = inputs_of(phi, w);
    in["f"] = stepfn_to_json(f);
    in["g"] = stepfn_to_json(g);
    TrialRow r = make_row(ctx, in);
    const double tol = std::min(ctx.tol, 1e-8);
    r.lhs = envelope_norm(f + g, w, phi, tol);
    r.rhs = envelope_norm(f, w, phi, tol) + envelope_norm(g, w, phi, tol);
    r.pass = le_rel(r.lhs, r.rhs, 1e-6);
    return r;
}

}  // namespace

namespace gen {

StepFn step(std::mt19937_64& rng, std::size_t max_cells, double end, double zero_prob) {
    const std::size_t n = 1 + uniform_index(rng, max_cells);
    std::vector<double> b{0.0};
    std::vector<double> v;
    if (std::isinf(end)) {
        for (std::size_t k = 0; k < n; ++k) b.push_back(b.back() + uniform_real(rng, 0.2, 2.0));
        b.push_back(kInf);
    } else {
        std::vector<double> cuts;
        for (std::size_t k = 0; k + 1 < n; ++k) cuts.push_back(end * std::exp(uniform_real(rng, std::log(1e-3), 0.0)));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (double c : cuts)
            if (c > b.back() && c < end) b.push_back(c);
        b.push_back(end);
    }
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        if (std::isinf(b[k + 1])) {
            v.push_back(0.0);
        } else {
            v.push_back(uniform_real(rng, 0.0, 1.0) < zero_prob ? 0.0 : uniform_real(rng, 0.05, 5.0));
        }
    }
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v.front() = 1.0;
    return StepFn(std::move(b), std::move(v));
}

StepFn positive_step(std::mt19937_64& rng, std::size_t cells, double end) {
    StepFn f = step(rng, 1, end, 0.0);
    while (true) {
        f = step(rng, cells, end, 0.0);
        std::size_t positive = 0;
        for (double v : f.values()) positive += v > 0.0;
        if (positive == cells) return f;
    }
}

Seq seq(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> e(n);
    for (double& x : e) x = uniform_real(rng, 0.0, 1.0) < 0.1 ? 0.0 : uniform_real(rng, -5.0, 5.0);
    return Seq(std::move(e));
}

Seq decreasing_seq(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> e(n);
    for (double& x : e) x = uniform_real(rng, 0.1, 5.0);
    std::sort(e.begin(), e.end(), std::greater<>());
    return Seq(std::move(e));
}

Weight weight(std::mt19937_64& rng, bool allow_zero_tail, bool allow_bounded_domain) {
    const std::size_t choices = allow_bounded_domain ? 7 : 5;
    switch (uniform_index(rng, choices)) {
        case 0: return Weight::constant(1.0);
        case 1: return Weight::constant(uniform_real(rng, 0.5, 3.0));
        case 2: return Weight::power(0.5);
        case 3: return Weight::power(uniform_real(rng, 0.1, 0.8));
        case 4: {
            const std::size_t n = 1 + uniform_index(rng, 4);
            Seq vals = decreasing_seq(rng, n + 1);
            std::vector<double> b{0.0};
            for (std::size_t k = 0; k < n; ++k) b.push_back(b.back() + uniform_real(rng, 0.3, 2.0));
            b.push_back(kInf);
            std::vector<double> v(vals.entries);
            if (allow_zero_tail && uniform_index(rng, 3) == 0) v.back() = 0.0;
            return Weight::step(StepFn(std::move(b), std::move(v)));
        }
        case 5: return Weight::example415();
        default: return Weight::example314();
    }
}

OrliczFn phi(std::mt19937_64& rng, bool n_function_only) {
    if (n_function_only) {
        const double ps[] = {1.5, 2.0, 3.0};
        const double p = ps[uniform_index(rng, 3)];
        return uniform_index(rng, 2) == 0 ? OrliczFn::power(p) : OrliczFn::power_normalized(p);
    }
    switch (uniform_index(rng, 7)) {
        case 0: return OrliczFn::power(1.0);
        case 1: return OrliczFn::power(1.5);
        case 2: return OrliczFn::power(2.0);
        case 3: return OrliczFn::power(3.0);
        case 4: return OrliczFn::power_normalized(2.0);
        case 5: return OrliczFn::expm1();
        default: return OrliczFn::pwl({{1.0, 0.5}, {2.0, 2.0}, {4.0, 8.0}});
    }
}

}  // namespace gen

std::size_t CheckReport::failure_count() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const TrialRow& r) { return !r.pass; }));
}

const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"prop-finite", "permutation minimum equals the sorted modular", 200, prop_finite},
        {"balanced-matrix", "balanced-matrix inequality", 500, balanced_matrix},
        {"seq-infimum", "sequence modular is below every equimeasurable pairing", 500, seq_infimum},
        {"sandwich", "M1 <= P <= M with grid oracle agreement on small instances", 100, sandwich},
        {"superadditive", "disjoint superadditivity of M", 200, superadditive},
        {"p-concavity", "p-concavity of the norm for power functions", 100, p_concavity},
        {"ri-envelope", "P is rearrangement invariant", 100, ri_envelope},
        {"convexity-envelope", "midpoint convexity of P", 100, convexity_envelope},
        {"fundamental-sandwich", "F_M(t) <= G_M(t) <= F_M(2t)", 250, fundamental_sandwich},
        {"regular-equivalence", "norm equivalence for regular weights, blow-up otherwise", 30, regular_equivalence},
        {"holder", "Holder pairing bound", 200, holder},
        {"norming", "norming supremum reaches the Amemiya value", 100, norming},
        {"trivial-dual", "pairings diverge for the weight 1/t", 30, trivial_dual},
        {"hl-pairing", "Hardy-Littlewood pairing inequality", 200, hl_pairing},
        {"exchange", "two-cell exchange inequality", 200, exchange},
        {"lp-identity", "Luxemburg norm equals the L_p norm for w = 1", 100, lp_identity},
        {"l1-identity", "both norms equal the L_1 norm for phi(t) = t, w = 1", 50, l1_identity},
        {"fundamental-env", "envelope norm of indicators matches the closed form", 80, fundamental_env},
        {"weight-verdicts", "catalog weight predicates", 4, weight_verdicts},
        {"triangle-envelope", "triangle inequality of the envelope norm", 200, triangle_envelope},
    };
    return all;
}

const Suite* find_suite(const std::string& name) {
    for (const auto& s : suites())
        if (s.name == name) return &s;
    return nullptr;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
    return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(trial));
}

unsigned worker_count(const CheckConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("OLK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

TrialRow guarded(const Suite& suite, const TrialContext& ctx) {
    try {
        return suite.run(ctx);
    } catch (const std::exception& e) {
        TrialRow r;
        r.trial = ctx.trial;
        r.seed = ctx.seed;
        r.lhs = r.rhs = std::nan("");
        r.note = std::string("exception: ") + e.what();
        return r;
    }
}

}  // namespace

CheckReport run_suite(const Suite& suite, const CheckConfig& cfg) {
    CheckReport rep;
    rep.suite = suite.name;
    rep.config = cfg;
    rep.config.trials = cfg.trials ? cfg.trials : suite.default_trials;
    const std::size_t n = rep.config.trials;
    rep.rows.resize(n);
    const auto start = std::chrono::steady_clock::now();
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            rep.rows[i] = guarded(suite, TrialContext{i, trial_seed(cfg.seed, i), cfg.tol});
    };
    const unsigned threads = std::min<unsigned>(worker_count(cfg), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

TrialRow replay_trial(const Suite& suite, std::size_t trial, std::uint64_t seed, double tol) {
    return guarded(suite, TrialContext{trial, seed, tol});
}

Json report_to_json(const CheckReport& r, bool with_timestamp) {
    Json j;
    j["suite"] = r.suite;
    j["trials"] = r.config.trials;
    j["seed"] = r.config.seed;
    j["tol"] = real_to_json(r.config.tol);
    j["passed"] = r.rows.size() - r.failure_count();
    j["failures"] = Json::array();
    for (const auto& row : r.rows) {
        if (row.pass) continue;
        Json f;
        f["trial"] = row.trial;
        f["seed"] = row.seed;
        f["digest"] = row.digest;
        f["lhs"] = std::isnan(row.lhs) ? Json("nan") : real_to_json(row.lhs);
        f["rhs"] = std::isnan(row.rhs) ? Json("nan") : real_to_json(row.rhs);
        if (!row.note.empty()) f["note"] = row.note;
        j["failures"].push_back(f);
    }
    if (with_timestamp) {
        j["wall_seconds"] = r.wall_seconds;
        const std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["timestamp"] = buf;
    }
    return j;
}

std::string report_to_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    os << "suite,trial,seed,lhs,rhs,verdict\n";
    for (const auto& rep : reports)
        for (const auto& row : rep.rows)
            os << rep.suite << ',' << row.trial << ',' << row.seed << ',' << format_real(row.lhs) << ','
               << format_real(row.rhs) << ',' << (row.pass ? "pass" : "fail") << '\n';
    return os.str();
}

}  // namespace olk
