#include "aloenet/risk.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "aloenet/parallel.hpp"

namespace aloenet {

std::string to_string(Estimator e) {
    switch (e) {
        case Estimator::alo: return "alo";
        case Estimator::lo: return "lo";
        case Estimator::alo_smoothed: return "alo_smoothed";
        case Estimator::oo: return "oo";
    }
    return "alo";
}

VectorXd h_diagonal(const FitResult& fit, const Dataset& data, const Penalty& pen) {
    if (!fit.converged) throw invalid_input("h_diagonal requires a converged fit");
    const Index n = data.n();
    const Index m = static_cast<Index>(fit.active_set.size());
    VectorXd h = VectorXd::Zero(n);
    if (m == 0) return h;

    const VectorXd z = data.x * fit.beta;
    VectorXd d2(n);
    for (Index i = 0; i < n; ++i)
        d2(i) = loss_derivatives(data.family, data.y(i), z(i)).d2;

    MatrixXd Xs(n, m);
    for (Index j = 0; j < m; ++j) Xs.col(j) = data.x.col(fit.active_set[j]);

    const double ridge2 = 2.0 * pen.ridge_weight();
    if (m <= n) {
        MatrixXd A = Xs.transpose() * d2.asDiagonal() * Xs;
        A.diagonal().array() += ridge2;
        Eigen::LLT<MatrixXd> llt(A);
        if (llt.info() != Eigen::Success)
            throw numeric_error("h_diagonal: active-set system not SPD");
        const MatrixXd T = llt.solve(Xs.transpose()); // m x n
        for (Index i = 0; i < n; ++i) h(i) = d2(i) * Xs.row(i).dot(T.col(i));
    } else {
        // |S| > n: (2le I + Xs' D Xs)^{-1} = (I - B'(2le I_n + BB')^{-1} B) / 2le
        // with B = sqrt(D) Xs, so only an n x n factorization is needed.
        const VectorXd sq = d2.cwiseMax(0.0).cwiseSqrt();
        const MatrixXd B = sq.asDiagonal() * Xs;
        MatrixXd M = B * B.transpose();
        M.diagonal().array() += ridge2;
        Eigen::LLT<MatrixXd> llt(M);
        if (llt.info() != Eigen::Success)
            throw numeric_error("h_diagonal: Woodbury system not SPD");
        const MatrixXd V = B * Xs.transpose(); // n x n, col i = B x_{i,S}
        const MatrixXd W = llt.solve(V);
        for (Index i = 0; i < n; ++i)
            h(i) = d2(i) / ridge2 * (Xs.row(i).squaredNorm() - V.col(i).dot(W.col(i)));
    }
    return h;
}

namespace {

RiskReport finalize_mean(RiskReport rep) {
    const Index n = rep.per_obs.size();
    double s = 0;
    long counted = 0;
    for (Index i = 0; i < n; ++i) {
        if (std::find(rep.failed_indices.begin(), rep.failed_indices.end(), i) !=
            rep.failed_indices.end())
            continue;
        s += rep.per_obs(i);
        ++counted;
    }
    rep.value = counted > 0 ? s / static_cast<double>(counted) : 0.0;
    return rep;
}

} // namespace

RiskReport alo(const FitResult& fit, const Dataset& data, const Penalty& pen, PhiTag phi) {
    if (!fit.converged) throw invalid_input("alo requires a converged fit");
    const Index n = data.n();
    RiskReport rep;
    rep.estimator = Estimator::alo;
    rep.phi = phi;
    rep.h_diag = h_diagonal(fit, data, pen);
    rep.per_obs.resize(n);

    const VectorXd z = data.x * fit.beta;
    for (Index i = 0; i < n; ++i) {
        const LossDerivs ld = loss_derivatives(data.family, data.y(i), z(i));
        double d2 = ld.d2;
        if (d2 < kEpsCurvature) {
            d2 = kEpsCurvature;
            ++rep.curvature_guard_count;
        }
        double hii = (*rep.h_diag)(i);
        if (hii > 1.0 - kEpsH) {
            hii = 1.0 - kEpsH;
            ++rep.h_clip_count;
        }
        const double z_tilde = z(i) + (ld.d1 / d2) * (hii / (1.0 - hii));
        rep.per_obs(i) = phi_value(phi, data.family, data.y(i), z_tilde);
    }
    return finalize_mean(std::move(rep));
}

std::pair<RiskReport, std::vector<FitResult>> lo_exact(const Dataset& data, const Penalty& pen,
                                                       PhiTag phi, double tol, int workers) {
    data.validate();
    const Index n = data.n();

    FitOptions full_opts;
    full_opts.tol = tol;
    const FitResult full = fit(data, pen, full_opts);

    std::vector<FitResult> fits(n);
    parallel_for(n, workers, [&](long i) {
        FitOptions o;
        o.tol = tol;
        o.warm_start = full.beta;
        fits[i] = fit_loo(data, pen, static_cast<Index>(i), o);
    });

    RiskReport rep;
    rep.estimator = Estimator::lo;
    rep.phi = phi;
    rep.per_obs.resize(n);
    for (Index i = 0; i < n; ++i) {
        rep.per_obs(i) = phi_value(phi, data.family, data.y(i), data.x.row(i).dot(fits[i].beta));
        if (!fits[i].converged) rep.failed_indices.push_back(i);
    }
    return {finalize_mean(std::move(rep)), std::move(fits)};
}

RiskReport alo_smoothed(const SmoothedFitResult& sfit, const Dataset& data, const Penalty& pen,
                        PhiTag phi) {
    if (!sfit.converged) throw invalid_input("alo_smoothed requires a converged smoothed fit");
    const Index n = data.n(), p = data.p();
    const VectorXd z = data.x * sfit.beta;
    VectorXd d1(n), d2(n);
    for (Index i = 0; i < n; ++i) {
        const LossDerivs ld = loss_derivatives(data.family, data.y(i), z(i));
        d1(i) = ld.d1;
        d2(i) = ld.d2;
    }

    // lambda * diag(r''_alpha(beta)) with r_alpha = (1-eta) sum r1_alpha + eta |b|^2
    VectorXd reg_curv(p);
    for (Index k = 0; k < p; ++k) {
        const double rdd = smoothed_derivatives(sfit.alpha, sfit.beta(k)).ddr;
        reg_curv(k) = pen.l1_weight() * rdd + 2.0 * pen.ridge_weight();
    }

    MatrixXd A = data.x.transpose() * d2.asDiagonal() * data.x;
    A.diagonal() += reg_curv;
    Eigen::LLT<MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) throw numeric_error("alo_smoothed: system not SPD");
    const MatrixXd T = llt.solve(data.x.transpose()); // p x n

    RiskReport rep;
    rep.estimator = Estimator::alo_smoothed;
    rep.phi = phi;
    rep.per_obs.resize(n);
    VectorXd h(n);
    for (Index i = 0; i < n; ++i) h(i) = d2(i) * data.x.row(i).dot(T.col(i));
    rep.h_diag = h;
    for (Index i = 0; i < n; ++i) {
        double c = d2(i);
        if (c < kEpsCurvature) {
            c = kEpsCurvature;
            ++rep.curvature_guard_count;
        }
        double hii = h(i);
        if (hii > 1.0 - kEpsH) {
            hii = 1.0 - kEpsH;
            ++rep.h_clip_count;
        }
        const double z_tilde = z(i) + (d1(i) / c) * (hii / (1.0 - hii));
        rep.per_obs(i) = phi_value(phi, data.family, data.y(i), z_tilde);
    }
    return finalize_mean(std::move(rep));
}

RiskReport oo_estimate(const FitResult& fit, const Dataset& test, PhiTag phi) {
    if (test.p() != fit.beta.size()) throw invalid_input("oo_estimate: p mismatch");
    const Index m = test.n();
    RiskReport rep;
    rep.estimator = Estimator::oo;
    rep.phi = phi;
    rep.per_obs.resize(m);
    const VectorXd z = test.x * fit.beta;
    for (Index i = 0; i < m; ++i)
        rep.per_obs(i) = phi_value(phi, test.family, test.y(i), z(i));
    return finalize_mean(std::move(rep));
}

} // namespace aloenet
