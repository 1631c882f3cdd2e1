#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aloenet/diagnostics.hpp"
#include "aloenet/risk.hpp"
#include "aloenet/serialize.hpp"
#include "aloenet/theory.hpp"

namespace aloenet {

enum class ExperimentKind {
    active_set_hist,
    scaling,
    alo_vs_lo,
    ridge_exactness,
    theory_check,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

// n as a function of p for grid experiments.
struct Aspect {
    enum class Kind { p_eq_n, p_eq_2n, gamma } kind = Kind::p_eq_n;
    double gamma0 = 1.0; // n = gamma0 * p when kind == gamma

    Index n_for(Index p) const;
    double gamma() const;
};

struct CsvInput {
    std::string x_path;
    std::string y_path;
    bool header = false;
    GlmFamily family;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::alo_vs_lo;
    SyntheticSpec spec;             // base synthetic design; grid overrides n, p, seed
    std::optional<CsvInput> csv;    // fixed dataset instead of synthetic draws
    Penalty penalty{1.0, 0.5};
    std::optional<PhiTag> phi;      // family default when unset
    std::vector<Index> p_grid;      // strictly increasing when present
    Aspect aspect;
    int replicates = 20;
    std::uint64_t seed = 0;
    int workers = 0;                // 0 -> ALO_ENET_WORKERS or hardware
    std::string out_dir = ".";
    double tol = 1e-8;

    void validate() const;
    PhiTag resolved_phi() const;
    int resolved_workers() const;
};

Json to_json(const ExperimentConfig& c);
ExperimentConfig experiment_config_from_json(const Json& j);

struct ResultRecord {
    std::string experiment;
    Index p = 0;
    Index n = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> metrics;
    double wall_time_s = 0.0; // persisted only to timing.csv, never to records.json
};

// Every driver writes records.json plus its data CSVs into config.out_dir.
// All outputs except timing.csv are byte-deterministic in (config, seed),
// independent of worker count.
std::vector<ResultRecord> run_active_set_hist(const ExperimentConfig& config);
std::vector<ResultRecord> run_scaling(const ExperimentConfig& config);
std::vector<ResultRecord> run_alo_vs_lo(const ExperimentConfig& config);
std::vector<ResultRecord> run_ridge_exactness(const ExperimentConfig& config);
std::vector<ResultRecord> run_theory_check(const ExperimentConfig& config);

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

// Boxplot stats: quartiles by linear interpolation, whiskers at the most
// extreme values within 1.5 IQR of the quartiles.
struct BoxStats {
    double q1, median, q3, whisker_lo, whisker_hi;
};
BoxStats box_stats(std::vector<double> values);

double quantile_linear(std::vector<double> sorted_values, double q);

// OLS slope of y on x; nullopt when fewer than two points.
std::optional<double> ols_slope(const std::vector<double>& x, const std::vector<double>& y);

// Maps an elastic-net fit to the scalar theory's loss scaling: the solver's
// gaussian loss carries 1/sigma^2, so both penalty weights pick up sigma^2.
TheoryInput theory_input_for(const VectorXd& beta_star, const SyntheticSpec& spec,
                             const Penalty& penalty, double gamma0);

} // namespace aloenet
