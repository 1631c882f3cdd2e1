#pragma once
#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aloenet/smoothing.hpp"
#include "aloenet/solver.hpp"

namespace aloenet {

enum class Estimator { alo, lo, alo_smoothed, oo };

std::string to_string(Estimator e);

struct RiskReport {
    Estimator estimator = Estimator::alo;
    double value = 0.0;                 // mean of per_obs
    VectorXd per_obs;                   // phi(y_i, predicted z_i)
    std::optional<VectorXd> h_diag;     // raw H_ii when the estimator uses them
    PhiTag phi = PhiTag::squared_error;
    long curvature_guard_count = 0;     // times the d2 floor engaged
    long h_clip_count = 0;              // times H_ii was clipped below 1
    std::vector<Index> failed_indices;  // LO refits that did not converge
};

// eps guards for the ALO correction ratio (see alo()).
inline constexpr double kEpsCurvature = 1e-10;
inline constexpr double kEpsH = 1e-8;

// Diagonal of H = X_S (2 lambda eta I + X_S' D X_S)^{-1} X_S' D with
// D = diag(l''(beta)). One Cholesky of the |S| x |S| system when |S| <= n, the
// Woodbury form factoring an n x n system otherwise.
VectorXd h_diagonal(const FitResult& fit, const Dataset& data, const Penalty& penalty);

// ALO on the active set: per_obs_i = phi(y_i, x_i'b + (l'_i/l''_i) H_ii/(1-H_ii)).
RiskReport alo(const FitResult& fit, const Dataset& data, const Penalty& penalty, PhiTag phi);

// Exact leave-one-out: n refits warm-started from the full fit. Deterministic
// for any worker count; unconverged refits are flagged, the value averages the
// converged indices.
std::pair<RiskReport, std::vector<FitResult>> lo_exact(const Dataset& data,
                                                       const Penalty& penalty, PhiTag phi,
                                                       double tol, int workers = 1);

// Smoothed ALO with H^a = X (lambda diag(r''_a(b)) + X'DX)^{-1} X'D on the full
// p x p system; r''_a includes the ridge curvature.
RiskReport alo_smoothed(const SmoothedFitResult& sfit, const Dataset& data,
                        const Penalty& penalty, PhiTag phi);

// Out-of-sample proxy: mean phi over a fresh test set.
RiskReport oo_estimate(const FitResult& fit, const Dataset& test, PhiTag phi);

} // namespace aloenet
