#pragma once
#include <Eigen/Core>

#include "aloenet/dataset.hpp"
#include "aloenet/penalty.hpp"

namespace aloenet {

struct SmoothedDerivs {
    double r;   // r_alpha(z) = (1/alpha)(log(1+e^{alpha z}) + log(1+e^{-alpha z}))
    double dr;  // tanh(alpha z / 2)
    double ddr; // 2 alpha / (e^{alpha z} + e^{-alpha z} + 2)
};

// Overflow-safe closed forms; r(0) = 2 log 2 / alpha, ddr(0) = alpha / 2.
SmoothedDerivs smoothed_derivatives(double alpha, double z);

struct SmoothedFitResult {
    VectorXd beta;
    double alpha = 0.0;
    double gradient_norm = 0.0; // sup-norm of the smoothed objective gradient
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Minimizes sum_i loss + lambda(1-eta) sum_k r_alpha(beta_k) + lambda eta ||beta||^2.
// The objective is smooth and 2*lambda*eta strongly convex; the certificate is the
// gradient sup-norm.
SmoothedFitResult fit_smoothed(const Dataset& data, const Penalty& penalty, double alpha,
                               double tol = 1e-8, int max_sweeps = 10000);

double smoothed_objective_of(const Dataset& data, const Penalty& penalty, double alpha,
                             const VectorXd& beta);

VectorXd smoothed_gradient_of(const Dataset& data, const Penalty& penalty, double alpha,
                              const VectorXd& beta);

} // namespace aloenet
