#pragma once
#include <Eigen/Core>
#include <array>
#include <utility>
#include <vector>

#include "aloenet/solver.hpp"

namespace aloenet {

// Inputs of the two-equation scalar system. Weights are the soft-threshold and
// ridge weights in the per-sample scaling: the limiting error variable is
//   w^f(tau, b) = b/(b + 2*ridge_weight*tau) * soft(tau Z + Theta, l1_weight*tau/b) - Theta
// with Theta uniform on the entries of beta_star and Z standard normal.
struct TheoryInput {
    VectorXd beta_star;
    double sigma = 1.0;        // noise sd
    double gamma0 = 1.0;       // n / p
    double l1_weight = 0.0;
    double ridge_weight = 0.0;

    void validate() const;
};

struct ScalarSolution {
    double tau_star = 0.0;     // sigma <= tau_star
    double b_star = 0.0;       // > 0
    double s_star = 0.0;       // limiting nonzero mass, in [0, 1]
    std::array<double, 2> residuals{0.0, 0.0}; // (tau-equation, b-equation)
    struct Bracket {
        double b_min = 0.0;
        double b_max = 0.0;
        double tau_max = 0.0;
    } bracket;
};

struct WfMoments {
    double m2;    // E[(w^f)^2]
    double zcorr; // E[Z * w^f]
};

// Closed-form Gaussian integrals of the soft threshold, averaged over Theta.
// No Monte Carlo anywhere on this path.
WfMoments w_hat_f_moments(const TheoryInput& input, double tau, double b);

// Solves  tau^2 = sigma^2 + m2/gamma0,  b = tau - zcorr/gamma0  by outer
// bisection on b over the strictly decreasing map g(b) = tau0(b) - b - zcorr/gamma0
// with a Newton-with-bisection inner solve for tau0(b). Brackets grow by cap
// doubling; exhaustion after 60 doublings is a fatal numeric error.
ScalarSolution solve_fixed_point(const TheoryInput& input);

// s* = P(|Theta + tau Z| >= l1_weight * tau / b).
double s_star(const TheoryInput& input, double tau_star, double b_star);

// CDF and quantile of mu*, the law of shrink * soft(tau Z + Theta, threshold).
double limiting_cdf(const TheoryInput& input, const ScalarSolution& sol, double v);
double limiting_quantile(const TheoryInput& input, const ScalarSolution& sol, double q);

// 1-D W2 distance between the empirical law of beta_hat and mu* via the
// quantile coupling at midpoints (j - 1/2)/p.
double wasserstein2_to_limit(const VectorXd& beta_hat, const TheoryInput& input,
                             const ScalarSolution& sol);

struct SparsityCheck {
    double empirical; // |S| / p
    double predicted; // s*
    double gap;
};
SparsityCheck sparsity_check(const FitResult& fit, const ScalarSolution& sol);

struct SubgradientTailCheck {
    double fraction;  // (1/p) #{k : |g_k| >= 1 - eps}
    double bound_ref; // s*
    double excess;    // (fraction - s*) / eps
};
SubgradientTailCheck subgradient_tail_check(const FitResult& fit, const ScalarSolution& sol,
                                            double eps);

} // namespace aloenet
