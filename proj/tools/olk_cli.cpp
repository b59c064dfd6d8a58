#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "olk/checks.hpp"
#include "olk/duality.hpp"
#include "olk/envelope.hpp"
#include "olk/json_io.hpp"
#include "olk/modular.hpp"
#include "olk/rearrange.hpp"

using namespace olk;

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitBadInput = 2;

Json load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

const Json& field(const Json& spec, const char* key) {
    if (!spec.contains(key)) throw SpecError(std::string("spec: missing field \"") + key + "\"");
    return spec.at(key);
}

StepFn first_function(const Json& spec) {
    if (spec.contains("f")) return stepfn_from_json(spec.at("f"), "f");
    if (spec.contains("x")) return stepfn_from_json(spec.at("x"), "x");
    const auto& fs = field(spec, "functions");
    if (!fs.is_array() || fs.empty()) throw SpecError("functions: expected a nonempty array");
    return stepfn_from_json(fs[0], "functions[0]");
}

StepFn second_function(const Json& spec) {
    if (spec.contains("g")) return stepfn_from_json(spec.at("g"), "g");
    const auto& fs = field(spec, "functions");
    if (!fs.is_array() || fs.size() < 2) throw SpecError("functions: expected at least two entries");
    return stepfn_from_json(fs[1], "functions[1]");
}

OrliczFn spec_phi(const Json& spec) { return phi_from_json(field(spec, "phi"), "phi"); }
Weight spec_weight(const Json& spec) { return weight_from_json(field(spec, "weight"), "weight"); }
double spec_real(const Json& spec, const char* key) { return real_from_json(field(spec, key), key); }

Json envelope_json(const EnvelopeSolution& s) {
    Json j;
    j["value"] = real_to_json(s.value.value());
    j["minimizer"] = stepfn_to_json(s.minimizer);
    j["lower"] = real_to_json(s.lower.value());
    j["upper"] = real_to_json(s.upper.value());
    j["gap"] = real_to_json(s.gap);
    j["iterations"] = s.iterations;
    j["fallback"] = s.fallback;
    return j;
}

Json evaluate(const std::string& name, const Json& spec, double tol) {
    Json out;
    out["functional"] = name;
    if (name == "rearrange") {
        out["value"] = stepfn_to_json(decreasing_rearrangement(first_function(spec)));
    } else if (name == "dist") {
        out["value"] = real_to_json(dist(first_function(spec), spec_real(spec, "s")).value());
    } else if (name == "modular-M") {
        const StepFn f = first_function(spec);
        if (spec.contains("v")) {
            out["value"] = real_to_json(modular_Iv(f, stepfn_from_json(spec.at("v"), "v"), spec_phi(spec)).value());
        } else {
            out["value"] = real_to_json(modular_M(f, spec_weight(spec), spec_phi(spec)).value());
        }
    } else if (name == "norm-luxemburg") {
        out["value"] = real_to_json(luxemburg_norm(first_function(spec), spec_weight(spec), spec_phi(spec)));
    } else if (name == "envelope-P") {
        EnvelopeOptions opt;
        opt.tol = tol;
        const auto s = envelope_modular_P(first_function(spec), spec_weight(spec), spec_phi(spec), opt);
        out.update(envelope_json(s));
    } else if (name == "norm-envelope") {
        out["value"] = real_to_json(envelope_norm(first_function(spec), spec_weight(spec), spec_phi(spec), tol));
    } else if (name == "orlicz-norm") {
        const OrliczFn phi = spec_phi(spec);
        const StepFn f = first_function(spec);
        const Weight w = spec_weight(spec);
        const auto am = orlicz_norm_amemiya(f, w, [&](double t) { return phi.conjugate(t); });
        out["value"] = real_to_json(am.value);
        out["amemiya_k"] = real_to_json(am.amemiya_k);
        if (is_n_function(phi)) {
            const auto sup = norming_supremum(f, w, phi);
            out["norming_value"] = real_to_json(sup.value);
            out["profile"] = stepfn_to_json(sup.profile);
            if (sup.attainer) out["attainer"] = stepfn_to_json(*sup.attainer);
            out["stalled"] = sup.stalled;
        }
    } else if (name == "fundamental-M") {
        out["value"] = real_to_json(fundamental_M(spec_real(spec, "t"), spec_weight(spec), spec_phi(spec)));
    } else if (name == "fundamental-G") {
        out["value"] = real_to_json(fundamental_G(spec_real(spec, "t"), spec_weight(spec), spec_phi(spec)));
    } else if (name == "fundamental-env") {
        out["value"] = real_to_json(fundamental_M_env(spec_real(spec, "t"), spec_weight(spec), spec_phi(spec)));
    } else if (name == "conjugate") {
        out["value"] = real_to_json(spec_phi(spec).conjugate(spec_real(spec, "t")));
    } else if (name == "indices") {
        IndexEstimate est;
        if (spec.contains("weight") && !spec.contains("phi")) {
            const Weight w = spec_weight(spec);
            IndexGrid grid;
            if (w.truncation() > 0.0) grid.t_lo = w.truncation() * (1.0 + 1e-9);
            if (std::isfinite(w.domain_end())) grid.t_hi = w.domain_end();
            est = matuszewska_indices([&](double t) { return w(t); }, grid);
        } else {
            est = matuszewska_indices(spec_phi(spec));
        }
        out["alpha"] = real_to_json(est.alpha);
        out["beta"] = real_to_json(est.beta);
    } else {
        throw SpecError("unknown functional \"" + name + "\"");
    }
    return out;
}

// Single trial driven by explicit inputs from a spec file.
TrialRow spec_trial(const std::string& suite, const Json& spec, double tol) {
    TrialRow r;
    r.digest = fnv1a_hex(spec.dump());
    if (suite == "exchange") {
        const auto& s = field(spec, "s");
        const auto& t = field(spec, "t");
        if (!s.is_array() || s.size() != 2 || !t.is_array() || t.size() != 2)
            throw SpecError("exchange: \"s\" and \"t\" must be pairs");
        const auto e = exchange_inequality(real_from_json(s[0], "s[0]"), real_from_json(s[1], "s[1]"),
                                           real_from_json(t[0], "t[0]"), real_from_json(t[1], "t[1]"), spec_phi(spec));
        r.lhs = e.sorted_side;
        r.rhs = e.swapped_side;
    } else if (suite == "hl-pairing") {
        const auto s = hardy_littlewood_check(first_function(spec), second_function(spec));
        r.lhs = s.lhs.value();
        r.rhs = s.rhs.value();
    } else if (suite == "superadditive") {
        const auto [joint, separate] =
            check_superadditive(first_function(spec), second_function(spec), spec_weight(spec), spec_phi(spec));
        r.lhs = separate.value();
        r.rhs = joint.value();
    } else if (suite == "sandwich") {
        EnvelopeOptions opt;
        opt.tol = tol;
        const auto s = envelope_modular_P(first_function(spec), spec_weight(spec), spec_phi(spec), opt);
        r.lhs = s.lower.value();
        r.rhs = s.upper.value();
        r.pass = s.lower <= s.value && s.value <= s.upper;
        return r;
    } else {
        throw SpecError("suite \"" + suite + "\" does not accept --spec");
    }
    r.pass = r.lhs <= r.rhs * (1.0 + 1e-12);
    return r;
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orlicz-Lorentz modulars, envelope functionals and property checks"};
    app.require_subcommand(1);

    std::string functional;
    std::string spec_path;
    double tol = 1e-6;
    auto* eval = app.add_subcommand("eval", "evaluate a functional on a spec bundle");
    eval->add_option("functional", functional, "rearrange, dist, modular-M, norm-luxemburg, envelope-P, norm-envelope, "
                                               "orlicz-norm, fundamental-M, fundamental-G, fundamental-env, conjugate, indices")
        ->required();
    eval->add_option("--spec", spec_path, "JSON spec bundle")->required();
    eval->add_option("--tol", tol, "solver tolerance");

    std::string suite_name;
    bool all = false;
    std::size_t trials = 0;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "json";
    bool no_timestamp = false;
    std::uint64_t replay_seed = 0;
    unsigned threads = 0;
    auto* check = app.add_subcommand("check", "run property suites");
    auto* suite_opt = check->add_option("--suite", suite_name, "suite name");
    auto* all_opt = check->add_flag("--all", all, "run every suite");
    suite_opt->excludes(all_opt);
    check->add_option("--trials", trials, "trials per suite (default: suite default)");
    check->add_option("--seed", seed, "base seed");
    check->add_option("--tol", tol, "solver tolerance");
    check->add_option("--out", out_path, "output file (default stdout)");
    check->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    check->add_flag("--no-timestamp", no_timestamp, "omit wall time and timestamp");
    check->add_option("--spec", spec_path, "run one trial on explicit inputs");
    auto* replay_opt = check->add_option("--replay", replay_seed, "rerun one trial from its recorded seed");
    std::size_t replay_trial_index = 0;
    check->add_option("--trial", replay_trial_index, "trial index for --replay")->needs(replay_opt);
    check->add_option("--threads", threads, "worker threads (overrides OLK_THREADS)");

    app.add_subcommand("suites", "list suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        if (app.got_subcommand("suites")) {
            for (const auto& s : suites()) std::cout << s.name << "\t" << s.default_trials << "\t" << s.description << "\n";
            return 0;
        }
        if (app.got_subcommand("eval")) {
            const Json spec = load_spec(spec_path);
            std::cout << evaluate(functional, spec, tol).dump(2) << "\n";
            return 0;
        }
        // check
        if (!all && suite_name.empty()) {
            std::cerr << "check: pass --suite NAME or --all\n";
            return kExitBadInput;
        }
        if (!all && !find_suite(suite_name)) {
            std::cerr << "check: unknown suite \"" << suite_name << "\"\n";
            return kExitBadInput;
        }
        if (!spec_path.empty()) {
            const TrialRow r = spec_trial(suite_name, load_spec(spec_path), tol);
            Json j;
            j["suite"] = suite_name;
            j["digest"] = r.digest;
            j["lhs"] = real_to_json(r.lhs);
            j["rhs"] = real_to_json(r.rhs);
            j["verdict"] = r.pass ? "pass" : "fail";
            std::cout << j.dump(2) << "\n";
            return r.pass ? 0 : kExitFailures;
        }
        if (replay_opt->count() > 0) {
            const TrialRow r = replay_trial(*find_suite(suite_name), replay_trial_index, replay_seed, tol);
            Json j;
            j["suite"] = suite_name;
            j["trial"] = r.trial;
            j["seed"] = r.seed;
            j["digest"] = r.digest;
            j["lhs"] = std::isnan(r.lhs) ? Json("nan") : real_to_json(r.lhs);
            j["rhs"] = std::isnan(r.rhs) ? Json("nan") : real_to_json(r.rhs);
            j["verdict"] = r.pass ? "pass" : "fail";
            if (!r.note.empty()) j["note"] = r.note;
            for (const auto& [k, v] : r.extra) j["extra"][k] = real_to_json(v);
            std::cout << j.dump(2) << "\n";
            return r.pass ? 0 : kExitFailures;
        }

        CheckConfig cfg;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.tol = tol;
        cfg.threads = threads;
        std::vector<CheckReport> reports;
        if (all) {
            for (const auto& s : suites()) {
                reports.push_back(run_suite(s, cfg));
                std::cerr << s.name << ": " << reports.back().rows.size() - reports.back().failure_count() << "/"
                          << reports.back().rows.size() << " passed";
                if (!no_timestamp) std::cerr << " in " << reports.back().wall_seconds << " s";
                std::cerr << "\n";
            }
        } else {
            reports.push_back(run_suite(*find_suite(suite_name), cfg));
        }
        std::size_t failures = 0;
        for (const auto& r : reports) failures += r.failure_count();

        std::string text;
        if (format == "csv") {
            text = report_to_csv(reports);
        } else {
            Json j;
            if (all) {
                j["suites"] = Json::array();
                for (const auto& r : reports) j["suites"].push_back(report_to_json(r, !no_timestamp));
                j["failures_total"] = failures;
            } else {
                j = report_to_json(reports.front(), !no_timestamp);
            }
            text = j.dump(2) + "\n";
        }
        if (!write_output(out_path, text)) {
            std::cerr << "check: cannot write " << out_path << "\n";
            return kExitBadInput;
        }
        return failures == 0 ? 0 : kExitFailures;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
