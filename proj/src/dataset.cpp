#include "aloenet/dataset.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "aloenet/num.hpp"

namespace aloenet {

void Dataset::validate() const {
    if (n() < 2) throw invalid_input("dataset needs n >= 2");
    if (p() < 1) throw invalid_input("dataset needs p >= 1");
    if (y.size() != n()) throw invalid_input("y length does not match x rows");
    if (!x.allFinite()) throw invalid_input("non-finite entry in x");
    family.validate();
    for (Index i = 0; i < n(); ++i) validate_response(family, y(i));
}

void SyntheticSpec::validate() const {
    if (n < 2 || p < 1) throw invalid_input("synthetic spec needs n >= 2, p >= 1");
    if (!(sparsity >= 0.0 && sparsity <= 1.0))
        throw invalid_input("sparsity must lie in [0, 1]");
    if (!(coef_sd > 0 && std::isfinite(coef_sd)))
        throw invalid_input("coef_sd must be positive");
    if (!(effective_column_variance() > 0 && std::isfinite(effective_column_variance())))
        throw invalid_input("column_variance must be positive");
    family.validate();
}

std::pair<Dataset, VectorXd> make_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const Index n = spec.n, p = spec.p;
    const double col_sd = std::sqrt(spec.effective_column_variance());

    Dataset ds;
    ds.family = spec.family;
    ds.x.resize(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) ds.x(i, j) = col_sd * gauss(rng);

    // Support is a uniform random subset (partial Fisher-Yates), not the first
    // k indices: the design must stay exchangeable across coordinates.
    const Index k = static_cast<Index>(std::llround(spec.sparsity * static_cast<double>(p)));
    std::vector<Index> idx(p);
    std::iota(idx.begin(), idx.end(), Index(0));
    for (Index j = 0; j < k; ++j) {
        std::uniform_int_distribution<Index> pick(j, p - 1);
        std::swap(idx[j], idx[pick(rng)]);
    }

    VectorXd beta_star = VectorXd::Zero(p);
    for (Index j = 0; j < k; ++j) beta_star(idx[j]) = spec.coef_sd * gauss(rng);

    const VectorXd z = ds.x * beta_star;
    ds.y.resize(n);
    for (Index i = 0; i < n; ++i) ds.y(i) = sample_response(spec.family, z(i), rng);

    return {std::move(ds), std::move(beta_star)};
}

namespace {

std::vector<std::vector<double>> parse_numeric_csv(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open file: " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    long file_line = 0;
    bool skipped = false;
    while (std::getline(in, line)) {
        ++file_line;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_header && !skipped) {
            skipped = true;
            continue;
        }
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        long col = 0;
        const long data_row = static_cast<long>(rows.size()) + 1;
        while (std::getline(ss, cell, ',')) {
            ++col;
            const auto l = cell.find_first_not_of(" \t");
            const auto r = cell.find_last_not_of(" \t");
            if (l == std::string::npos) {
                throw invalid_input(path + ": parse error at row " + std::to_string(data_row) +
                                    ", col " + std::to_string(col) + " (empty cell)");
            }
            cell = cell.substr(l, r - l + 1);
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end != cell.c_str() + cell.size() || !std::isfinite(v)) {
                throw invalid_input(path + ": parse error at row " + std::to_string(data_row) +
                                    ", col " + std::to_string(col) + " ('" + cell + "')");
            }
            row.push_back(v);
        }
        if (line.size() > 0 && line.back() == ',') {
            throw invalid_input(path + ": parse error at row " + std::to_string(data_row) +
                                ", col " + std::to_string(col + 1) + " (empty cell)");
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw invalid_input(path + ": row " + std::to_string(data_row) + " has " +
                                std::to_string(row.size()) + " columns, expected " +
                                std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw invalid_input(path + ": no data rows");
    return rows;
}

} // namespace

Dataset load_csv(const std::string& path_x, const std::string& path_y,
                 const GlmFamily& family, bool skip_header) {
    const auto xr = parse_numeric_csv(path_x, skip_header);
    const auto yr = parse_numeric_csv(path_y, skip_header);
    if (xr.size() != yr.size())
        throw invalid_input("row count mismatch: x has " + std::to_string(xr.size()) +
                            " rows, y has " + std::to_string(yr.size()));
    for (const auto& row : yr)
        if (row.size() != 1) throw invalid_input("y file must have exactly one column");

    Dataset ds;
    ds.family = family;
    const Index n = static_cast<Index>(xr.size());
    const Index p = static_cast<Index>(xr.front().size());
    ds.x.resize(n, p);
    ds.y.resize(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < p; ++j) ds.x(i, j) = xr[i][j];
        ds.y(i) = yr[i][0];
    }
    ds.validate();
    return ds;
}

double snr(const VectorXd& beta_star, const SyntheticSpec& spec, const GlmFamily& family) {
    const double signal_var = spec.effective_column_variance() * beta_star.squaredNorm();
    if (family.kind == FamilyKind::gaussian)
        return signal_var / (family.noise_sd * family.noise_sd);
    if (signal_var == 0 && family.kind == FamilyKind::poisson) {
        return 0.0; // var(y|0) = log 2 > 0, numerator 0
    }
    // E[var(y|z)] over z ~ N(0, signal_var) via 61-node Gauss-Hermite on the
    // probabilists' weights (generated from the physicists' table by scaling).
    const int m = 61;
    static thread_local std::vector<double> nodes, weights;
    if (nodes.empty()) {
        // Golub-Welsch on the Hermite Jacobi matrix.
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i + 1 < m; ++i) {
            const double b = std::sqrt((i + 1) / 2.0);
            J(i, i + 1) = b;
            J(i + 1, i) = b;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
        nodes.resize(m);
        weights.resize(m);
        for (int i = 0; i < m; ++i) {
            nodes[i] = es.eigenvalues()(i) * std::numbers::sqrt2;
            const double v0 = es.eigenvectors()(0, i);
            weights[i] = v0 * v0; // physicists' weight / sqrt(pi)
        }
    }
    const double sd = std::sqrt(signal_var);
    double mean_var = 0;
    for (int i = 0; i < m; ++i) {
        const double z = sd * nodes[i];
        double v;
        if (family.kind == FamilyKind::logistic) {
            const double s = sigmoid(z);
            v = s * (1.0 - s);
        } else {
            v = softplus(z);
        }
        mean_var += weights[i] * v;
    }
    return signal_var / mean_var;
}

} // namespace aloenet
