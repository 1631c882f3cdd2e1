#include "aloenet/serialize.hpp"

#include <charconv>
#include <fstream>

namespace aloenet {

namespace {

Json vec_to_json(const VectorXd& v) {
    Json arr = Json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Json idx_to_json(const std::vector<Index>& v) {
    Json arr = Json::array();
    for (Index i : v) arr.push_back(i);
    return arr;
}

} // namespace

Json to_json(const GlmFamily& f) {
    Json j;
    j["kind"] = to_string(f.kind);
    if (f.kind == FamilyKind::gaussian) j["noise_sd"] = f.noise_sd;
    return j;
}

GlmFamily family_from_json(const Json& j) {
    GlmFamily f;
    f.kind = family_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("noise_sd")) f.noise_sd = j.at("noise_sd").get<double>();
    f.validate();
    return f;
}

Json to_json(const SyntheticSpec& s) {
    Json j;
    j["n"] = s.n;
    j["p"] = s.p;
    j["sparsity"] = s.sparsity;
    j["coef_sd"] = s.coef_sd;
    j["column_variance"] = s.effective_column_variance();
    j["family"] = to_json(s.family);
    j["seed"] = s.seed;
    return j;
}

SyntheticSpec synthetic_spec_from_json(const Json& j) {
    SyntheticSpec s;
    s.n = j.at("n").get<Index>();
    s.p = j.at("p").get<Index>();
    s.sparsity = j.at("sparsity").get<double>();
    s.coef_sd = j.at("coef_sd").get<double>();
    if (j.contains("column_variance")) s.column_variance = j.at("column_variance").get<double>();
    s.family = family_from_json(j.at("family"));
    s.seed = j.at("seed").get<std::uint64_t>();
    s.validate();
    return s;
}

Json to_json(const Penalty& p) {
    Json j;
    j["lambda"] = p.lambda();
    j["eta"] = p.eta();
    return j;
}

Penalty penalty_from_json(const Json& j) {
    return Penalty(j.at("lambda").get<double>(), j.at("eta").get<double>());
}

Json to_json(const FitResult& f) {
    Json j;
    j["beta"] = vec_to_json(f.beta);
    j["active_set"] = idx_to_json(f.active_set);
    j["subgrad"] = vec_to_json(f.subgrad);
    j["objective"] = f.objective;
    j["kkt_residual"] = f.kkt_residual;
    j["iterations"] = f.iterations;
    j["converged"] = f.converged;
    return j;
}

Json to_json(const SmoothedFitResult& f) {
    Json j;
    j["beta"] = vec_to_json(f.beta);
    j["alpha"] = f.alpha;
    j["gradient_norm"] = f.gradient_norm;
    j["objective"] = f.objective;
    j["iterations"] = f.iterations;
    j["converged"] = f.converged;
    return j;
}

Json to_json(const RiskReport& r) {
    Json j;
    j["estimator"] = to_string(r.estimator);
    j["value"] = r.value;
    j["per_obs"] = vec_to_json(r.per_obs);
    if (r.h_diag) j["h_diag"] = vec_to_json(*r.h_diag);
    j["phi"] = to_string(r.phi);
    j["curvature_guard_count"] = r.curvature_guard_count;
    j["h_clip_count"] = r.h_clip_count;
    j["failed_indices"] = idx_to_json(r.failed_indices);
    return j;
}

Json to_json(const ScalarSolution& s) {
    Json j;
    j["tau_star"] = s.tau_star;
    j["b_star"] = s.b_star;
    j["s_star"] = s.s_star;
    j["residuals"] = {s.residuals[0], s.residuals[1]};
    j["bracket"] = {{"b_min", s.bracket.b_min},
                    {"b_max", s.bracket.b_max},
                    {"tau_max", s.bracket.tau_max}};
    return j;
}

Json to_json(const ActiveSetDiagnostics& d) {
    Json j;
    j["s1_full"] = idx_to_json(d.s1_full);
    j["s0_full"] = idx_to_json(d.s0_full);
    Json per = Json::array();
    for (const auto& e : d.per_i) {
        Json je;
        je["s1_loo"] = idx_to_json(e.s1_loo);
        je["s0_loo"] = idx_to_json(e.s0_loo);
        je["b1"] = idx_to_json(e.b1);
        je["b0"] = idx_to_json(e.b0);
        je["b1_plus"] = idx_to_json(e.b1_plus);
        je["theorem_delta"] = e.theorem_delta;
        je["sym_diff"] = e.sym_diff;
        per.push_back(std::move(je));
    }
    j["per_i"] = std::move(per);
    j["d_n"] = d.d_n;
    return j;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void CsvWriter::add_row(std::vector<CsvCell> row) {
    if (row.size() != columns_.size()) throw invalid_input("csv row width mismatch");
    rows_.push_back(std::move(row));
}

void CsvWriter::write(const std::string& path) const {
    std::string out;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (c) out += ',';
        out += columns_[c];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += row[c].text;
        }
        out += '\n';
    }
    write_text_file(path, out);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot write file: " + path);
    f << content;
}

} // namespace aloenet
