#pragma once
#include <vector>

#include "aloenet/solver.hpp"

namespace aloenet {

// Gap parameters for the kappa-gapped active/inactive proxies
//   S1 = {k : |beta_k| > kappa1},  S0 = {k : |g(beta)_k| <= 1 - kappa0}.
struct DiagnosticsConfig {
    double kappa0 = 0.0;
    double kappa1 = 0.0;

    // kappa0 = (8 log p / (c p))^{1/6}, kappa1 = p^{-1/12} (log p)^{1/4}, both
    // clamped into (0, 1): the closed forms exceed 1 for small p.
    static DiagnosticsConfig defaults_for(Index p, double c = 1.0);

    void validate() const;
};

struct PerLeaveOutDiagnostics {
    std::vector<Index> s1_loo;
    std::vector<Index> s0_loo;
    std::vector<Index> b1;      // S1 kept after leave-i-out
    std::vector<Index> b0;      // S0 kept after leave-i-out
    std::vector<Index> b1_plus; // b1 minus sign flips
    Index theorem_delta = 0;    // p - |b0 union b1_plus|
    Index sym_diff = 0;         // |S symmetric-difference S_{/i}|
};

struct ActiveSetDiagnostics {
    std::vector<Index> s1_full;
    std::vector<Index> s0_full;
    std::vector<PerLeaveOutDiagnostics> per_i;
    Index d_n = 0; // max_i theorem_delta
};

ActiveSetDiagnostics active_set_diagnostics(const FitResult& fit,
                                            const std::vector<FitResult>& loo_fits,
                                            const Dataset& data, const Penalty& penalty,
                                            const DiagnosticsConfig& cfg);

} // namespace aloenet
