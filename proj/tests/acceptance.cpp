// Acceptance run: one PASS/FAIL line per criterion. Every tolerance is pinned
// here and re-derived from the trial rows instead of trusting the suite verdicts.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "olk/checks.hpp"
#include "olk/duality.hpp"
#include "olk/weights.hpp"

using namespace olk;

namespace {

constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << " [" << detail << "]" << std::endl;
    if (!ok) ++failures;
}

double rel_excess(double lhs, double rhs) { return (lhs - rhs) / std::max(std::abs(rhs), 1e-300); }

double rel_diff(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

struct SuiteRun {
    CheckReport report;
    double seconds = 0.0;
};

SuiteRun run(const std::string& name, std::size_t trials, double tol = 1e-6) {
    const Suite* s = find_suite(name);
    if (!s) throw std::runtime_error("missing suite " + name);
    const auto t0 = std::chrono::steady_clock::now();
    SuiteRun out{run_suite(*s, {.trials = trials, .seed = kSeed, .tol = tol}), 0.0};
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// Counts rows whose recorded verdict or the pinned predicate fails.
std::size_t bad_rows(const CheckReport& r, const std::function<bool(const TrialRow&)>& ok) {
    std::size_t bad = 0;
    for (const auto& row : r.rows)
        if (!row.pass || !ok(row)) ++bad;
    return bad;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

void criterion1() {
    const auto r = run("prop-finite", 200);
    double worst = 0.0;
    const auto bad = bad_rows(r.report, [&](const TrialRow& row) {
        worst = std::max(worst, rel_diff(row.lhs, row.rhs));
        return rel_diff(row.lhs, row.rhs) <= 1e-12;
    });
    report(1, r.report.rows.size() == 200 && bad == 0 && r.seconds < 10.0,
           "permutation minimum equals the sorted modular",
           "200 trials, max rel err " + fmt(worst) + " <= 1e-12, " + fmt(r.seconds) + " s < 10 s");
}

void criterion2() {
    const auto r = run("balanced-matrix", 500);
    double worst = -kInf;
    const auto bad = bad_rows(r.report, [&](const TrialRow& row) {
        worst = std::max(worst, rel_excess(row.lhs, row.rhs));
        return rel_excess(row.lhs, row.rhs) <= 1e-12;
    });
    report(2, r.report.rows.size() == 500 && bad == 0, "balanced-matrix inequality",
           "500 trials, " + std::to_string(bad) + " violations, max rel excess " + fmt(worst));
}

void criterion3() {
    const auto r = run("seq-infimum", 500);
    std::size_t finite = 0;
    const auto bad = bad_rows(r.report, [&](const TrialRow& row) {
        if (std::isinf(row.lhs)) return std::isinf(row.rhs);
        ++finite;
        const double sorted = row.extra.at("sorted_arrangement");
        const bool below = std::isinf(row.rhs) || rel_excess(row.lhs, row.rhs) <= 1e-12;
        return below && rel_diff(sorted, row.lhs) <= 1e-12;
    });
    report(3, r.report.rows.size() == 500 && bad == 0 && finite > 400,
           "m(x) <= I_v(x) for equimeasurable v, equality at the sorting arrangement",
           "500 trials (" + std::to_string(finite) + " finite), " + std::to_string(bad) + " violations");
}

void criterion4() {
    const auto r = run("lp-identity", 100);
    double worst = 0.0;
    const auto bad = bad_rows(r.report, [&](const TrialRow& row) {
        worst = std::max(worst, rel_diff(row.lhs, row.rhs));
        return rel_diff(row.lhs, row.rhs) <= 1e-8;
    });
    report(4, r.report.rows.size() == 100 && bad == 0, "Luxemburg norm is the L_p norm for w = 1, phi = u^p",
           "100 trials, max rel err " + fmt(worst) + " <= 1e-8");
}

void criterion5() {
    const auto r = run("l1-identity", 50);
    double worst = 0.0;
    const auto bad = bad_rows(r.report, [&](const TrialRow& row) {
        const double e = std::max(std::abs(row.lhs - row.rhs), std::abs(row.extra.at("luxemburg") - row.rhs));
        worst = std::max(worst, e);
        return e <= 1e-6;
    });
    report(5, r.report.rows.size() == 50 && bad == 0, "both norms equal the integral for phi = t, w = 1",
           "50 trials, max abs err " + fmt(worst) + " <= 1e-6");
}

void criterion6() {
    const auto r = run("sandwich", 100);
    std::size_t compared = 0;
    double worst = 0.0;
    const auto bad = bad_rows(r.report, [&](const TrialRow& row) {
        const double lower = row.extra.at("lower");
        if (!(lower <= row.lhs && row.lhs <= row.rhs)) return false;
        const auto it = row.extra.find("oracle");
        if (it == row.extra.end()) return true;
        ++compared;
        worst = std::max(worst, rel_diff(it->second, row.lhs));
        return rel_diff(it->second, row.lhs) <= 1e-4;
    });
    report(6, r.report.rows.size() == 100 && bad == 0 && compared >= 40,
           "M1 <= P <= M in every run; solver agrees with the lattice oracle",
           "100 runs, " + std::to_string(compared) + " oracle comparisons, max rel gap " + fmt(worst) + " <= 1e-4");
}

void criterion7() {
    const auto r = run("fundamental-env", 80);
    double worst = 0.0;
    const auto bad = bad_rows(r.report, [&](const TrialRow& row) {
        const double e = std::abs(row.lhs - row.rhs) / std::max(1.0, row.rhs);
        worst = std::max(worst, e);
        return e <= 1e-6;
    });
    report(7, r.report.rows.size() == 80 && bad == 0, "envelope norm of indicators matches the closed form",
           "20 t x 4 pairs, max err " + fmt(worst) + " <= 1e-6");
}

void criterion8() {
    const auto r = run("fundamental-sandwich", 250);
    const auto bad = bad_rows(r.report, [](const TrialRow& row) {
        const double f1 = row.extra.at("F_M(t)"), g1 = row.extra.at("G_M(t)"), f2 = row.extra.at("F_M(2t)");
        return f1 <= g1 * (1 + 1e-9) && g1 <= f2 * (1 + 1e-9);
    });
    report(8, r.report.rows.size() == 250 && bad == 0, "F_M(t) <= G_M(t) <= F_M(2t)",
           "50 t x 5 pairs, " + std::to_string(bad) + " violations at 1e-9");
}

void criterion9() {
    const auto c = is_regular(Weight::constant(1.0));
    const auto p = is_regular(Weight::power(0.5));
    const Weight w314 = Weight::example314(8);
    const auto d314 = inv_w_delta2(w314);
    const auto& tk = w314.probe_sequences().front();
    const bool witness_is_tk = std::find(tk.begin(), tk.end(), d314.witness) != tk.end();
    const Weight w415 = Weight::example415(8);
    const auto d415 = inv_w_delta2(w415);
    const auto r415 = is_regular(w415);
    const bool ok = c.holds && std::abs(c.constant - 1.0) <= 1e-12 && p.holds && std::abs(p.constant - 2.0) <= 1e-9 &&
                    !d314.holds && witness_is_tk && d415.holds && !r415.holds;
    std::ostringstream d;
    d << "const C=" << c.constant << ", t^-1/2 C=" << p.constant << ", example314 delta2 "
      << (d314.holds ? "true" : "false") << " witness " << d314.witness << ", example415 delta2 "
      << (d415.holds ? "true" : "false") << " regular " << (r415.holds ? "true" : "false");
    const auto suite = run("weight-verdicts", 4);
    report(9, ok && suite.report.ok(), "catalog weight verdicts", d.str());
}

void criterion10() {
    const auto h = run("holder", 200);
    const auto hb = bad_rows(h.report, [](const TrialRow& row) { return row.lhs <= row.rhs * (1 + 1e-6); });
    const auto n = run("norming", 100);
    double worst = kInf;
    const auto nb = bad_rows(n.report, [&](const TrialRow& row) {
        worst = std::min(worst, row.lhs / row.rhs);
        return row.lhs >= 0.95 * row.rhs;
    });
    const auto t = run("trivial-dual", 30);
    const auto tb = bad_rows(t.report, [](const TrialRow& row) {
        if (row.note == "linear phi rejected") return true;
        return row.lhs > 1e3 && row.extra.at("max_modular") <= 1.0;
    });
    const auto probe = trivial_dual_probe(1.0, Weight::power(1.0), OrliczFn::power(2.0));
    const bool direct = probe.diverged && probe.modular_bounded && probe.steps.back().pairing > 1e3;
    report(10, hb == 0 && nb == 0 && tb == 0 && direct && h.report.rows.size() == 200 && n.report.rows.size() == 100,
           "Holder bound, norming supremum, trivial dual",
           "holder " + std::to_string(hb) + "/200 violations at 1+1e-6; norming min ratio " + fmt(worst) +
               " >= 0.95; probe pairing " + fmt(probe.steps.back().pairing) + " > 1e3 with modular <= 1");
}

void criterion11() {
    const auto s = run("superadditive", 200);
    const auto sb = bad_rows(s.report, [](const TrialRow& row) { return row.lhs <= row.rhs * (1 + 1e-12); });
    const auto tr = run("triangle-envelope", 200);
    const auto tb = bad_rows(tr.report, [](const TrialRow& row) { return row.lhs <= row.rhs * (1 + 1e-6); });
    const auto ri = run("ri-envelope", 100, 1e-9);
    const auto rb = bad_rows(ri.report, [](const TrialRow& row) { return rel_diff(row.lhs, row.rhs) <= 1e-5; });
    const auto pc = run("p-concavity", 100);
    const auto pb = bad_rows(pc.report, [](const TrialRow& row) { return row.lhs <= row.rhs * (1 + 1e-9); });
    report(11, sb + tb + rb + pb == 0, "superadditivity, triangle inequality, rearrangement invariance, p-concavity",
           "violations " + std::to_string(sb) + "/200, " + std::to_string(tb) + "/200 at 1e-6, " + std::to_string(rb) +
               "/100 at 1e-5, " + std::to_string(pb) + "/100");
}

void criterion12() {
    const std::string cmd = std::string(OLK_CLI_PATH) + " check --all --out /dev/null 2>/dev/null";
    const auto t0 = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    report(12, code == 0 && secs < 300.0, "check --all exits 0 within 5 minutes",
           "exit " + std::to_string(code) + " after " + fmt(secs) + " s");
}

}  // namespace

int main() {
    const std::function<void()> criteria[] = {criterion1, criterion2, criterion3,  criterion4,
                                              criterion5, criterion6, criterion7,  criterion8,
                                              criterion9, criterion10, criterion11, criterion12};
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, "exception", e.what());
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
