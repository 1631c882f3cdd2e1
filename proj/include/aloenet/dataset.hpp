#pragma once
#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>

#include "aloenet/families.hpp"

namespace aloenet {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Dataset {
    MatrixXd x;       // n x p, rows are observations
    VectorXd y;       // n
    GlmFamily family;

    Index n() const { return x.rows(); }
    Index p() const { return x.cols(); }

    // n >= 2, p >= 1, finite entries, responses in the family domain.
    void validate() const;
};

struct SyntheticSpec {
    Index n = 0;
    Index p = 0;
    double sparsity = 0.0;          // fraction of nonzero entries of beta*
    double coef_sd = 1.0;           // sd of the nonzero coefficients
    double column_variance = -1.0;  // variance of X entries; < 0 means default 1/n
    GlmFamily family;
    std::uint64_t seed = 0;

    double effective_column_variance() const {
        return column_variance < 0 ? 1.0 / static_cast<double>(n) : column_variance;
    }
    void validate() const;
};

// Draws X with iid N(0, column_variance) entries, a uniformly random support of
// round(sparsity*p) coordinates with iid N(0, coef_sd^2) values, and y from the
// family's conditional law at z = X beta*. Bitwise reproducible for a fixed seed.
std::pair<Dataset, VectorXd> make_synthetic(const SyntheticSpec& spec);

// Comma-separated numeric files; `skip_header` drops one leading line from each.
// Parse failures name the 1-based row and column.
Dataset load_csv(const std::string& path_x, const std::string& path_y,
                 const GlmFamily& family, bool skip_header = false);

// var(x' beta*) / var(y | x' beta*). Gaussian is exact; for logistic/poisson the
// denominator is the conditional variance averaged over z ~ N(0, v ||beta*||^2)
// by Gauss-Hermite quadrature.
double snr(const VectorXd& beta_star, const SyntheticSpec& spec, const GlmFamily& family);

} // namespace aloenet
