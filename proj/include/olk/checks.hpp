#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "olk/core.hpp"
#include "olk/json_io.hpp"
#include "olk/orlicz.hpp"
#include "olk/weights.hpp"

namespace olk {

struct TrialRow {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
    std::string digest;                   ///< FNV-1a of the serialized inputs
    std::string note;
    std::map<std::string, double> extra;  ///< suite-specific diagnostics
};

struct CheckConfig {
    std::size_t trials = 0;  ///< 0 selects the suite default
    std::uint64_t seed = 1;
    double tol = 1e-6;       ///< solver tolerance for envelope computations
    unsigned threads = 0;    ///< 0 reads OLK_THREADS, then hardware concurrency
};

struct CheckReport {
    std::string suite;
    CheckConfig config;
    std::vector<TrialRow> rows;
    double wall_seconds = 0.0;

    std::size_t failure_count() const;
    bool ok() const { return failure_count() == 0; }
};

struct TrialContext {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double tol = 1e-6;
};

using TrialFn = std::function<TrialRow(const TrialContext&)>;

struct Suite {
    std::string name;
    std::string description;
    std::size_t default_trials = 0;
    TrialFn run;
};

/// All registered suites, in a fixed order.
const std::vector<Suite>& suites();
const Suite* find_suite(const std::string& name);

/// Per-trial seed derived from the suite seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);
/// Number of worker threads from the config, OLK_THREADS and the hardware.
unsigned worker_count(const CheckConfig& cfg);

CheckReport run_suite(const Suite& suite, const CheckConfig& cfg);
/// Rerun one trial from its recorded index and per-trial seed.
TrialRow replay_trial(const Suite& suite, std::size_t trial, std::uint64_t seed, double tol);

Json report_to_json(const CheckReport& r, bool with_timestamp);
/// Header plus one row per trial: suite, trial, seed, lhs, rhs, verdict.
std::string report_to_csv(const std::vector<CheckReport>& reports);

/// Random instance generators shared by the suites and tests.
namespace gen {

/// Step function with 1..max_cells cells of random length; domain (0, end).
/// On (0, inf) a zero tail is appended.
StepFn step(std::mt19937_64& rng, std::size_t max_cells, double end = kInf, double zero_prob = 0.15);
/// Step function with exactly `cells` positive cells on (0, end).
StepFn positive_step(std::mt19937_64& rng, std::size_t cells, double end = kInf);
/// Entries in [-5, 5], some exactly zero.
Seq seq(std::mt19937_64& rng, std::size_t n);
/// Positive nonincreasing entries in [0.1, 5].
Seq decreasing_seq(std::mt19937_64& rng, std::size_t n);
/// Uniformly chosen catalog weight with W finite on compacts.
Weight weight(std::mt19937_64& rng, bool allow_zero_tail = true, bool allow_bounded_domain = true);
/// Catalog Orlicz function; N-functions only when requested.
OrliczFn phi(std::mt19937_64& rng, bool n_function_only = false);

}  // namespace gen

}  // namespace olk
