#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "aloenet/experiments.hpp"
#include "aloenet/parallel.hpp"
#include "aloenet/serialize.hpp"

namespace {

using namespace aloenet;

struct DataArgs {
    std::string x_path, y_path, spec_path;
    bool header = false;
    std::string family = "gaussian";
    double sigma = 1.0;
};

void add_data_flags(CLI::App* cmd, DataArgs& d) {
    cmd->add_option("--x", d.x_path, "design matrix CSV (rows are observations)");
    cmd->add_option("--y", d.y_path, "response CSV (one column)");
    cmd->add_flag("--header", d.header, "skip one header line in the CSV files");
    cmd->add_option("--family", d.family, "gaussian | logistic | poisson");
    cmd->add_option("--sigma", d.sigma, "gaussian noise sd");
    cmd->add_option("--spec", d.spec_path, "SyntheticSpec JSON instead of CSV input");
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw invalid_input(path + ": " + e.what());
    }
    return j;
}

GlmFamily family_from_args(const DataArgs& d) {
    GlmFamily f;
    f.kind = family_kind_from_string(d.family);
    f.noise_sd = d.sigma;
    f.validate();
    return f;
}

// CSV pair or a drawn synthetic dataset; beta_star is zero for CSV input.
Dataset load_data(const DataArgs& d, VectorXd* beta_star) {
    if (!d.spec_path.empty()) {
        const SyntheticSpec spec = synthetic_spec_from_json(read_json_file(d.spec_path));
        auto [ds, bs] = make_synthetic(spec);
        if (beta_star) *beta_star = std::move(bs);
        return ds;
    }
    if (d.x_path.empty() || d.y_path.empty())
        throw invalid_input("provide --x and --y CSV paths or --spec JSON");
    Dataset ds = load_csv(d.x_path, d.y_path, family_from_args(d), d.header);
    if (beta_star) *beta_star = VectorXd::Zero(ds.p());
    return ds;
}

ExperimentConfig default_experiment_config(ExperimentKind kind, bool full) {
    ExperimentConfig c;
    c.experiment = kind;
    c.spec.n = 500;
    c.spec.p = 1000;
    c.spec.sparsity = 0.2;
    c.spec.coef_sd = 1.0;
    c.spec.family = GlmFamily{FamilyKind::gaussian, 1.0};
    c.penalty = Penalty(2.0, 0.5);
    switch (kind) {
        case ExperimentKind::active_set_hist:
            c.replicates = 1;
            break;
        case ExperimentKind::scaling:
            c.aspect.kind = Aspect::Kind::p_eq_n;
            c.p_grid = full ? std::vector<Index>{1000, 1585, 2512, 3981, 6310, 10000}
                            : std::vector<Index>{250, 500, 1000};
            c.replicates = full ? 20 : 10;
            break;
        case ExperimentKind::alo_vs_lo:
            c.aspect.kind = Aspect::Kind::p_eq_2n;
            c.p_grid = full ? std::vector<Index>{1000, 2000, 4000, 8000}
                            : std::vector<Index>{200, 400, 800};
            c.replicates = 5;
            break;
        case ExperimentKind::ridge_exactness:
            c.spec.n = 200;
            c.spec.p = 100;
            c.penalty = Penalty(1.0, 1.0);
            c.replicates = 5;
            break;
        case ExperimentKind::theory_check:
            c.aspect.kind = Aspect::Kind::gamma;
            c.aspect.gamma0 = 0.5;
            c.p_grid = {500, 1000, 2000};
            c.replicates = 5;
            break;
    }
    return c;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"approximate leave-one-out risk estimation for elastic-net GLMs"};
    app.require_subcommand(1);

    double lambda = 1.0, eta = 0.5, tol = 1e-8, alpha = 0.0;
    std::string phi_name, out_dir, config_path, experiment_name;
    std::uint64_t seed = 0;
    bool seed_given = false, full = false;
    int workers = 0;
    DataArgs data;

    const auto add_penalty_flags = [&](CLI::App* cmd) {
        cmd->add_option("--lambda", lambda, "penalty lambda")->required();
        cmd->add_option("--eta", eta, "penalty eta in (0, 1]")->required();
        cmd->add_option("--tol", tol, "KKT tolerance");
    };
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--workers", workers, "worker threads (default ALO_ENET_WORKERS)");
        cmd->add_option("--out", out_dir, "output directory for CSV files");
        cmd->add_option("--phi", phi_name, "squared_error | deviance");
    };

    CLI::App* cmd_fit = app.add_subcommand("fit", "fit the elastic-net GLM, print FitResult JSON");
    add_data_flags(cmd_fit, data);
    add_penalty_flags(cmd_fit);

    CLI::App* cmd_lo = app.add_subcommand("lo", "exact leave-one-out risk (n refits)");
    add_data_flags(cmd_lo, data);
    add_penalty_flags(cmd_lo);
    add_common(cmd_lo);

    CLI::App* cmd_alo = app.add_subcommand("alo", "approximate leave-one-out risk");
    add_data_flags(cmd_alo, data);
    add_penalty_flags(cmd_alo);
    add_common(cmd_alo);
    cmd_alo->add_option("--alpha", alpha, "use the smoothed surrogate at this alpha");

    CLI::App* cmd_diag = app.add_subcommand("diagnose", "active-set perturbation diagnostics");
    add_data_flags(cmd_diag, data);
    add_penalty_flags(cmd_diag);
    add_common(cmd_diag);
    double kappa0 = 0, kappa1 = 0, kappa_c = 1.0;
    cmd_diag->add_option("--kappa0", kappa0, "subgradient gap (default from p)");
    cmd_diag->add_option("--kappa1", kappa1, "coefficient gap (default from p)");
    cmd_diag->add_option("--kappa-c", kappa_c, "constant c in the kappa0 default");

    CLI::App* cmd_theory = app.add_subcommand("theory", "solve the scalar fixed point");
    cmd_theory->add_option("--spec", data.spec_path, "SyntheticSpec JSON (defines beta*, n/p)")
        ->required();
    add_penalty_flags(cmd_theory);

    CLI::App* cmd_exp = app.add_subcommand("experiment", "run a named experiment");
    cmd_exp->add_option("name", experiment_name,
                        "active-set-hist | scaling | alo-vs-lo | ridge-exactness | theory-check")
        ->required();
    cmd_exp->add_option("--config", config_path, "ExperimentConfig JSON");
    cmd_exp->add_flag("--full", full, "full-scale grids instead of the desk-scale defaults");
    cmd_exp->add_option("--workers", workers, "worker threads");
    cmd_exp->add_option("--out", out_dir, "output directory");
    auto* seed_opt = cmd_exp->add_option("--seed", seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }
    seed_given = seed_opt->count() > 0;

    const Penalty penalty = app.got_subcommand(cmd_exp) ? Penalty(1.0, 0.5) : Penalty(lambda, eta);
    FitOptions fo;
    fo.tol = tol;

    if (app.got_subcommand(cmd_fit)) {
        const Dataset ds = load_data(data, nullptr);
        const FitResult res = fit(ds, penalty, fo);
        if (!res.converged) std::cerr << "warning: fit did not reach the KKT tolerance\n";
        std::cout << to_json(res).dump(2) << "\n";
        return 0;
    }

    if (app.got_subcommand(cmd_lo) || app.got_subcommand(cmd_alo) ||
        app.got_subcommand(cmd_diag)) {
        const Dataset ds = load_data(data, nullptr);
        const PhiTag phi =
            phi_name.empty() ? default_phi(ds.family) : phi_tag_from_string(phi_name);
        const int w = workers >= 1 ? workers : default_workers();

        if (app.got_subcommand(cmd_alo)) {
            if (alpha > 0) {
                const SmoothedFitResult sres = fit_smoothed(ds, penalty, alpha, tol);
                if (!sres.converged) std::cerr << "warning: smoothed fit not converged\n";
                std::cout << to_json(alo_smoothed(sres, ds, penalty, phi)).dump(2) << "\n";
            } else {
                const FitResult res = fit(ds, penalty, fo);
                std::cout << to_json(alo(res, ds, penalty, phi)).dump(2) << "\n";
            }
            return 0;
        }

        auto [rep, loo_fits] = lo_exact(ds, penalty, phi, tol, w);
        if (!rep.failed_indices.empty())
            std::cerr << "warning: " << rep.failed_indices.size()
                      << " leave-one-out refits did not converge\n";
        if (app.got_subcommand(cmd_lo)) {
            std::cout << to_json(rep).dump(2) << "\n";
            return 0;
        }

        const FitResult res = fit(ds, penalty, fo);
        DiagnosticsConfig dc = DiagnosticsConfig::defaults_for(ds.p(), kappa_c);
        if (kappa0 > 0) dc.kappa0 = kappa0;
        if (kappa1 > 0) dc.kappa1 = kappa1;
        const ActiveSetDiagnostics diag = active_set_diagnostics(res, loo_fits, ds, penalty, dc);
        if (!out_dir.empty()) {
            const RiskReport alo_rep = alo(res, ds, penalty, phi);
            std::filesystem::create_directories(out_dir);
            CsvWriter per_i(
                {"i", "h_ii", "per_obs_alo", "per_obs_lo", "sym_diff", "theorem_delta"});
            for (Index i = 0; i < ds.n(); ++i) {
                const auto& e = diag.per_i[static_cast<std::size_t>(i)];
                per_i.add_row({i, (*alo_rep.h_diag)(i), alo_rep.per_obs(i), rep.per_obs(i),
                               e.sym_diff, e.theorem_delta});
            }
            per_i.write(out_dir + "/per_i.csv");
        }
        std::cout << to_json(diag).dump(2) << "\n";
        return 0;
    }

    if (app.got_subcommand(cmd_theory)) {
        const SyntheticSpec spec = synthetic_spec_from_json(read_json_file(data.spec_path));
        auto [ds, beta_star] = make_synthetic(spec);
        const double gamma0 = static_cast<double>(spec.n) / static_cast<double>(spec.p);
        const TheoryInput ti = theory_input_for(beta_star, spec, Penalty(lambda, eta), gamma0);
        std::cout << to_json(solve_fixed_point(ti)).dump(2) << "\n";
        return 0;
    }

    // experiment
    const ExperimentKind kind = experiment_kind_from_string(experiment_name);
    ExperimentConfig config = config_path.empty()
                                  ? default_experiment_config(kind, full)
                                  : experiment_config_from_json(read_json_file(config_path));
    config.experiment = kind;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (workers >= 1) config.workers = workers;
    if (seed_given) config.seed = seed;
    const auto records = run_experiment(config);
    std::cerr << "wrote " << records.size() << " records to " << config.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const aloenet::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const aloenet::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
