#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wcounts/enumerate.hpp"
#include "wcounts/exponents.hpp"
#include "wcounts/fit.hpp"
#include "wcounts/local_zeta.hpp"

namespace wcounts {

// One experiment: a group, a diagram action, a divisor class, a boundary
// selection, a place set, and the knobs of the counting/zeta/fit pipelines.
struct ExperimentConfig {
    char type_letter = 'A';
    int rank = 1;
    std::vector<std::vector<int>> generators; // 0-based images
    bool lambda_is_log_anticanonical = false; // lambda = -(K+D) shorthand
    std::vector<Rational> lambda;             // explicit coefficients otherwise
    std::vector<int> boundary;                // 0-based A_D indices
    std::vector<Place> places;                // contains inf

    std::vector<Rational> thresholds;
    unsigned long long budget = 2'000'000'000ULL;
    long double guard_rel = 1e-9L;
    long double arch_tol = 1e-12L;
    int threads = 1;

    long long zeta_prime_cutoff = 10'000;
    std::vector<long double> zeta_s{3.0L};
    bool zeta_delta_on = true;
    int zeta_depth = 40;

    long double tol_a = 0.1L;
    long double ratio_tol = 0.1L;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& c);

// All derived objects of a configuration, validated against every module
// precondition before any work starts.
struct Experiment {
    ExperimentConfig config;
    DiagramAction action;
    BoundarySelection selection;
    DivisorVector lambda;
    bool lambda_equals_log_anticanonical = false;
};

Experiment build_experiment(const ExperimentConfig& c);

// Deterministic exponent prediction with serialized provenance.
nlohmann::json predict(const Experiment& ex);

CountQuery make_count_query(const Experiment& ex);

// Chooses the fastest valid strategy: the specialized PGL_2 path when the
// whole boundary of PGL_2 is selected, the general enumerator otherwise.
CountSeries run_count(const Experiment& ex);

nlohmann::json zeta_summary(const Experiment& ex);

// Pure function of the predicted exponents, the observed series, and the
// tolerances; re-running on a saved series reproduces the verdicts.
nlohmann::json make_report(const Experiment& ex, const CountSeries& series);

// counts.csv: header "B,N,flagged,seconds", exact thresholds.
void write_counts_csv(const std::string& path, const CountSeries& series, double seconds);
CountSeries read_counts_csv(const std::string& path);

void write_points_jsonl(const std::string& path, const CountSeries& series);

// Writes via a temporary file and rename.
void atomic_write(const std::string& path, const std::string& contents);

} // namespace wcounts
