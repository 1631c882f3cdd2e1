#pragma once
#include <Eigen/Core>
#include <optional>
#include <vector>

#include "aloenet/dataset.hpp"
#include "aloenet/penalty.hpp"

namespace aloenet {

struct FitOptions {
    double tol = 1e-8;                       // KKT sup-norm target
    int max_sweeps = 10000;                  // coordinate sweeps (inner + full)
    std::optional<VectorXd> warm_start;
    Index exclude_row = -1;                  // leave this observation out; -1 keeps all
};

struct FitResult {
    VectorXd beta;
    std::vector<Index> active_set;           // sorted; {k : beta_k != 0}
    VectorXd subgrad;                        // g(beta), the implied l1 subgradient
    double objective = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;                      // sweeps used
    bool converged = false;
    std::vector<double> objective_trace;     // per-sweep objective; in-memory only
};

// Minimizes sum_i loss(y_i | x_i' b) + lambda(1-eta)||b||_1 + lambda eta ||b||_2^2.
// Gaussian loss runs coordinate descent with active-set cycling; logistic and
// Poisson run a proximal Newton outer loop (coordinate descent on the quadratic
// model, Armijo halving on the true objective). Coordinates become zero exactly
// when the soft-threshold update returns zero.
FitResult fit(const Dataset& data, const Penalty& penalty, const FitOptions& opts = {});

// Same contract on the dataset with row i removed; warm-started from the full
// fit unless opts.warm_start is set.
FitResult fit_loo(const Dataset& data, const Penalty& penalty, Index i,
                  const FitOptions& opts = {});

// KKT sup-norm of a candidate beta, recomputed from scratch:
//   on the active set  |sum_i x_ik l'_i + 2*lambda*eta*b_k + lambda(1-eta)sign(b_k)|
//   off the active set (|sum_i x_ik l'_i + 2*lambda*eta*b_k| - lambda(1-eta))_+
double kkt_residual_of(const Dataset& data, const Penalty& penalty,
                       const VectorXd& beta, Index exclude_row = -1);

// g(beta) = -(X' l'(beta) + 2*lambda*eta*beta) / (lambda(1-eta)); zero when eta = 1.
VectorXd subgradient_of(const Dataset& data, const Penalty& penalty,
                        const VectorXd& beta, Index exclude_row = -1);

double objective_of(const Dataset& data, const Penalty& penalty,
                    const VectorXd& beta, Index exclude_row = -1);

} // namespace aloenet
