#include "aloenet/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace aloenet {

DiagnosticsConfig DiagnosticsConfig::defaults_for(Index p, double c) {
    if (p < 8) throw invalid_input("diagnostics defaults need p >= 8");
    if (!(c > 0)) throw invalid_input("diagnostics constant c must be positive");
    const double pd = static_cast<double>(p);
    DiagnosticsConfig cfg;
    cfg.kappa0 = std::pow(8.0 * std::log(pd) / (c * pd), 1.0 / 6.0);
    cfg.kappa1 = std::pow(pd, -1.0 / 12.0) * std::pow(std::log(pd), 0.25);
    const double cap = 1.0 - 1e-9;
    cfg.kappa0 = std::min(cfg.kappa0, cap);
    cfg.kappa1 = std::min(cfg.kappa1, cap);
    return cfg;
}

void DiagnosticsConfig::validate() const {
    if (!(kappa0 > 0 && kappa0 < 1) || !(kappa1 > 0 && kappa1 < 1))
        throw invalid_input("diagnostics config requires kappa0, kappa1 in (0, 1)");
}

namespace {

std::vector<Index> large_coef_set(const VectorXd& beta, double kappa1) {
    std::vector<Index> s;
    for (Index k = 0; k < beta.size(); ++k)
        if (std::abs(beta(k)) > kappa1) s.push_back(k);
    return s;
}

std::vector<Index> small_subgrad_set(const VectorXd& g, double kappa0) {
    std::vector<Index> s;
    for (Index k = 0; k < g.size(); ++k)
        if (std::abs(g(k)) <= 1.0 - kappa0) s.push_back(k);
    return s;
}

std::vector<Index> intersect(const std::vector<Index>& a, const std::vector<Index>& b) {
    std::vector<Index> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Index sym_diff_size(const std::vector<Index>& a, const std::vector<Index>& b) {
    std::vector<Index> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return static_cast<Index>(out.size());
}

Index union_size(const std::vector<Index>& a, const std::vector<Index>& b) {
    std::vector<Index> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return static_cast<Index>(out.size());
}

} // namespace

ActiveSetDiagnostics active_set_diagnostics(const FitResult& fit,
                                            const std::vector<FitResult>& loo_fits,
                                            const Dataset& data, const Penalty& penalty,
                                            const DiagnosticsConfig& cfg) {
    cfg.validate();
    (void)penalty;
    if (!fit.converged) throw invalid_input("diagnostics require a converged full fit");
    const Index p = data.p();
    if (fit.beta.size() != p) throw invalid_input("fit does not match dataset");

    ActiveSetDiagnostics out;
    out.s1_full = large_coef_set(fit.beta, cfg.kappa1);
    out.s0_full = small_subgrad_set(fit.subgrad, cfg.kappa0);
    out.per_i.reserve(loo_fits.size());

    for (const FitResult& lf : loo_fits) {
        if (lf.beta.size() != p) throw invalid_input("leave-one-out fit has wrong length");
        PerLeaveOutDiagnostics d;
        d.s1_loo = large_coef_set(lf.beta, cfg.kappa1);
        d.s0_loo = small_subgrad_set(lf.subgrad, cfg.kappa0);
        d.b1 = intersect(out.s1_full, d.s1_loo);
        d.b0 = intersect(out.s0_full, d.s0_loo);
        for (Index k : d.b1)
            if (fit.beta(k) * lf.beta(k) > 0) d.b1_plus.push_back(k);
        d.theorem_delta = p - union_size(d.b0, d.b1_plus);
        d.sym_diff = sym_diff_size(fit.active_set, lf.active_set);
        out.d_n = std::max(out.d_n, d.theorem_delta);
        out.per_i.push_back(std::move(d));
    }
    return out;
}

} // namespace aloenet
