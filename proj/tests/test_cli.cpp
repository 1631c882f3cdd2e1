#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(ALO_ENET_BIN_PATH) + " " + args + " 2>/tmp/aloenet_stderr";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream f(p);
    f << content;
    return p;
}

} // namespace

TEST_CASE("fit prints FitResult JSON and exits 0") {
    const auto xp = write_file("cli_x.csv", "1,0\n0,1\n0.5,0.5\n");
    const auto yp = write_file("cli_y.csv", "3\n0.1\n1\n");
    const RunResult r = run("fit --x " + xp.string() + " --y " + yp.string() +
                            " --family gaussian --lambda 1 --eta 0.5");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("beta"));
    CHECK(j.contains("active_set"));
    CHECK(j.contains("subgrad"));
    CHECK(j.contains("kkt_residual"));
    CHECK(j.at("converged").get<bool>());
}

TEST_CASE("unknown flag exits 1 with usage on stderr") {
    const RunResult r = run("fit --nonsense 3");
    CHECK(r.exit_code == 1);
    std::ifstream err("/tmp/aloenet_stderr");
    std::string text((std::istreambuf_iterator<char>(err)), std::istreambuf_iterator<char>());
    CHECK(text.find("Usage") != std::string::npos);
}

TEST_CASE("domain violation in the response exits 1") {
    const auto xp = write_file("cli_x2.csv", "1,0\n0,1\n0.5,0.5\n");
    const auto yp = write_file("cli_y2.csv", "1\n0.5\n0\n");
    const RunResult r = run("fit --x " + xp.string() + " --y " + yp.string() +
                            " --family logistic --lambda 1 --eta 0.5");
    CHECK(r.exit_code == 1);
}

TEST_CASE("alo and lo subcommands emit risk reports") {
    const auto spec = write_file("cli_spec.json",
                                 R"({"n": 30, "p": 12, "sparsity": 0.25, "coef_sd": 1.0,
                                     "family": {"kind": "gaussian", "noise_sd": 1.0}, "seed": 3})");
    const RunResult a = run("alo --spec " + spec.string() + " --lambda 1 --eta 0.5");
    CHECK(a.exit_code == 0);
    const auto ja = nlohmann::json::parse(a.out);
    CHECK(ja.at("estimator") == "alo");

    const RunResult l = run("lo --spec " + spec.string() + " --lambda 1 --eta 0.5 --workers 2");
    CHECK(l.exit_code == 0);
    const auto jl = nlohmann::json::parse(l.out);
    CHECK(jl.at("estimator") == "lo");
    CHECK(jl.at("failed_indices").empty());
}

TEST_CASE("theory subcommand prints a scalar solution") {
    const auto spec = write_file("cli_spec_t.json",
                                 R"({"n": 50, "p": 100, "sparsity": 0.2, "coef_sd": 1.0,
                                     "family": {"kind": "gaussian", "noise_sd": 1.0}, "seed": 5})");
    const RunResult r = run("theory --spec " + spec.string() + " --lambda 2 --eta 0.5");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("tau_star").get<double>() > 1.0);
    CHECK(j.at("b_star").get<double>() > 0.0);
}

TEST_CASE("experiment subcommand writes CSVs into the output directory") {
    const fs::path out = fs::temp_directory_path() / "cli_exp_out";
    fs::remove_all(out);
    const auto cfg = write_file("cli_cfg.json", R"({
        "experiment": "scaling",
        "spec": {"n": 16, "p": 8, "sparsity": 0.25, "coef_sd": 1.0,
                 "family": {"kind": "gaussian", "noise_sd": 1.0}, "seed": 0},
        "penalty": {"lambda": 0.8, "eta": 0.5},
        "p_grid": [8, 12],
        "aspect": "p=n",
        "replicates": 2,
        "seed": 9,
        "workers": 1,
        "out_dir": ")" + out.string() + R"(",
        "tol": 1e-8})");
    const RunResult r = run("experiment scaling --config " + cfg.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "boxplot.csv"));
    CHECK(fs::exists(out / "summary.json"));
    CHECK(fs::exists(out / "records.json"));
    CHECK(fs::exists(out / "timing.csv"));
}

TEST_CASE("unknown experiment name exits 1") {
    const RunResult r = run("experiment frobnicate");
    CHECK(r.exit_code == 1);
}

TEST_CASE("diagnose emits diagnostics JSON and the per-i CSV") {
    const auto spec = write_file("cli_spec_d.json",
                                 R"({"n": 24, "p": 12, "sparsity": 0.25, "coef_sd": 1.0,
                                     "family": {"kind": "gaussian", "noise_sd": 1.0}, "seed": 4})");
    const fs::path out = fs::temp_directory_path() / "cli_diag_out";
    fs::remove_all(out);
    const RunResult r = run("diagnose --spec " + spec.string() +
                            " --lambda 0.8 --eta 0.5 --workers 2 --out " + out.string());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("s1_full"));
    CHECK(j.contains("per_i"));
    CHECK(j.at("per_i").size() == 24);
    CHECK(fs::exists(out / "per_i.csv"));
    std::ifstream f(out / "per_i.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "i,h_ii,per_obs_alo,per_obs_lo,sym_diff,theorem_delta");
}

TEST_CASE("alo with --alpha runs the smoothed pipeline") {
    const auto spec = write_file("cli_spec_s.json",
                                 R"({"n": 30, "p": 8, "sparsity": 0.25, "coef_sd": 4.0,
                                     "family": {"kind": "gaussian", "noise_sd": 1.0}, "seed": 6})");
    const RunResult r = run("alo --spec " + spec.string() + " --lambda 1 --eta 0.5 --alpha 1e5");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("estimator") == "alo_smoothed");
    CHECK(j.at("h_diag").size() == 30);
}
