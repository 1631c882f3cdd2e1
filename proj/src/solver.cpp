#include "aloenet/solver.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "aloenet/num.hpp"

namespace aloenet {

namespace {

// Loss derivative vectors at linear predictor z; the excluded row gets zeros so
// downstream sums never see it.
void eval_derivs(const Dataset& data, const VectorXd& z, Index ex,
                 VectorXd* loss, VectorXd* d1, VectorXd* d2) {
    const Index n = data.n();
    for (Index i = 0; i < n; ++i) {
        if (i == ex) {
            if (loss) (*loss)(i) = 0;
            if (d1) (*d1)(i) = 0;
            if (d2) (*d2)(i) = 0;
            continue;
        }
        const LossDerivs ld = loss_derivatives(data.family, data.y(i), z(i));
        if (loss) (*loss)(i) = ld.loss;
        if (d1) (*d1)(i) = ld.d1;
        if (d2) (*d2)(i) = ld.d2;
    }
}

double penalty_value(const Penalty& pen, const VectorXd& beta) {
    return pen.l1_weight() * beta.lpNorm<1>() + pen.ridge_weight() * beta.squaredNorm();
}

double kkt_from_gradient(const VectorXd& v, const VectorXd& beta, double l1, double l2) {
    double worst = 0;
    for (Index k = 0; k < beta.size(); ++k) {
        const double g = v(k) + 2.0 * l2 * beta(k);
        double viol;
        if (beta(k) != 0.0)
            viol = std::abs(g + l1 * (beta(k) > 0 ? 1.0 : -1.0));
        else
            viol = std::max(std::abs(g) - l1, 0.0);
        worst = std::max(worst, viol);
    }
    return worst;
}

VectorXd subgrad_from_gradient(const VectorXd& v, const VectorXd& beta, double l1, double l2) {
    if (l1 == 0.0) return VectorXd::Zero(beta.size()); // pure ridge: no l1 subgradient
    return -(v + 2.0 * l2 * beta) / l1;
}

std::vector<Index> active_set_of(const VectorXd& beta) {
    std::vector<Index> s;
    for (Index k = 0; k < beta.size(); ++k)
        if (beta(k) != 0.0) s.push_back(k);
    return s;
}

void check_finite_objective(double obj) {
    if (!std::isfinite(obj)) throw numeric_error("non-finite objective in solver");
}

FitResult ridge_gaussian_closed_form(const Dataset& data, const Penalty& pen,
                                     const FitOptions& opts) {
    const Index n = data.n(), p = data.p();
    const Index ex = opts.exclude_row;
    const double s2 = data.family.noise_sd * data.family.noise_sd;
    const double c = 2.0 * pen.ridge_weight() * s2;

    VectorXd beta(p);
    if (p <= n) {
        MatrixXd A = data.x.transpose() * data.x;
        VectorXd rhs = data.x.transpose() * data.y;
        if (ex >= 0) {
            A.noalias() -= data.x.row(ex).transpose() * data.x.row(ex);
            rhs.noalias() -= data.x.row(ex).transpose() * data.y(ex);
        }
        A.diagonal().array() += c;
        Eigen::LLT<MatrixXd> llt(A);
        if (llt.info() != Eigen::Success) throw numeric_error("ridge system not SPD");
        beta = llt.solve(rhs);
        beta += llt.solve(rhs - A * beta); // one refinement step
    } else {
        // dual form: beta = X'(XX' + cI)^{-1} y on the kept rows
        MatrixXd Xk = data.x;
        VectorXd yk = data.y;
        if (ex >= 0) {
            Xk.block(ex, 0, n - 1 - ex, p) = data.x.bottomRows(n - 1 - ex);
            Xk.conservativeResize(n - 1, p);
            yk.segment(ex, n - 1 - ex) = data.y.tail(n - 1 - ex);
            yk.conservativeResize(n - 1);
        }
        MatrixXd G = Xk * Xk.transpose();
        G.diagonal().array() += c;
        Eigen::LLT<MatrixXd> llt(G);
        if (llt.info() != Eigen::Success) throw numeric_error("ridge system not SPD");
        VectorXd alpha = llt.solve(yk);
        alpha += llt.solve(yk - G * alpha);
        beta = Xk.transpose() * alpha;
    }

    FitResult out;
    out.beta = beta;
    out.active_set = active_set_of(beta);
    out.objective = objective_of(data, pen, beta, ex);
    check_finite_objective(out.objective);
    out.kkt_residual = kkt_residual_of(data, pen, beta, ex);
    out.subgrad = subgradient_of(data, pen, beta, ex);
    out.iterations = 1;
    out.converged = out.kkt_residual <= opts.tol;
    out.objective_trace = {out.objective};
    return out;
}

FitResult gaussian_cd(const Dataset& data, const Penalty& pen, const FitOptions& opts) {
    const Index p = data.p();
    const Index ex = opts.exclude_row;
    const double l1 = pen.l1_weight(), l2 = pen.ridge_weight();
    const double inv_v = 1.0 / (data.family.noise_sd * data.family.noise_sd);

    VectorXd colsq(p);
    for (Index k = 0; k < p; ++k) {
        colsq(k) = data.x.col(k).squaredNorm();
        if (ex >= 0) colsq(k) -= data.x(ex, k) * data.x(ex, k);
    }

    VectorXd beta = opts.warm_start ? *opts.warm_start : VectorXd::Zero(p);
    if (opts.warm_start && beta.size() != p) throw invalid_input("warm start has wrong length");
    VectorXd r = data.y - data.x * beta; // full residual; row ex is corrected out below

    const auto objective = [&]() {
        double sq = r.squaredNorm();
        if (ex >= 0) sq -= r(ex) * r(ex);
        return 0.5 * inv_v * sq + l1 * beta.lpNorm<1>() + l2 * beta.squaredNorm();
    };

    // One pass in fixed index order; returns the largest gradient-scale change.
    const auto sweep = [&](bool active_only) {
        double maxch = 0;
        for (Index k = 0; k < p; ++k) {
            if (active_only && beta(k) == 0.0) continue;
            double rho = data.x.col(k).dot(r);
            if (ex >= 0) rho -= data.x(ex, k) * r(ex);
            const double a = inv_v * colsq(k) + 2.0 * l2;
            const double u = inv_v * rho + inv_v * colsq(k) * beta(k);
            const double t = soft(u, l1) / a;
            const double d = t - beta(k);
            if (d != 0.0) {
                r.noalias() -= data.x.col(k) * d;
                beta(k) = t;
                maxch = std::max(maxch, std::abs(d) * a);
            }
        }
        return maxch;
    };

    FitResult out;
    out.objective_trace.push_back(objective());
    check_finite_objective(out.objective_trace.back());

    int sweeps = 0;
    VectorXd v(p);
    for (;;) {
        r.noalias() = data.y - data.x * beta; // resync against incremental drift
        v.noalias() = -inv_v * (data.x.transpose() * r);
        if (ex >= 0) v.noalias() += inv_v * r(ex) * data.x.row(ex).transpose();
        const double kkt = kkt_from_gradient(v, beta, l1, l2);
        out.kkt_residual = kkt;
        if (kkt <= opts.tol) {
            out.converged = true;
            break;
        }
        if (sweeps >= opts.max_sweeps) break;

        for (int inner = 0; inner < 200 && sweeps < opts.max_sweeps; ++inner) {
            const double ch = sweep(true);
            ++sweeps;
            out.objective_trace.push_back(objective());
            if (ch <= 0.1 * opts.tol) break;
        }
        if (sweeps < opts.max_sweeps) {
            sweep(false);
            ++sweeps;
            out.objective_trace.push_back(objective());
            check_finite_objective(out.objective_trace.back());
        }
    }

    out.beta = std::move(beta);
    out.active_set = active_set_of(out.beta);
    out.subgrad = subgrad_from_gradient(v, out.beta, l1, l2);
    out.objective = out.objective_trace.back();
    out.iterations = sweeps;
    return out;
}

FitResult prox_newton(const Dataset& data, const Penalty& pen, const FitOptions& opts) {
    const Index n = data.n(), p = data.p();
    const Index ex = opts.exclude_row;
    const double l1 = pen.l1_weight(), l2 = pen.ridge_weight();

    VectorXd beta = opts.warm_start ? *opts.warm_start : VectorXd::Zero(p);
    if (opts.warm_start && beta.size() != p) throw invalid_input("warm start has wrong length");
    VectorXd z = data.x * beta;
    VectorXd d1(n), d2(n);

    const auto objective_at = [&](const VectorXd& zz, const VectorXd& bb) {
        double s = 0;
        for (Index i = 0; i < n; ++i) {
            if (i == ex) continue;
            s += loss_derivatives(data.family, data.y(i), zz(i)).loss;
        }
        return s + penalty_value(pen, bb);
    };

    FitResult out;
    double obj = objective_at(z, beta);
    check_finite_objective(obj);
    out.objective_trace.push_back(obj);

    int sweeps = 0;
    bool last_step_full = true;
    VectorXd v(p), t(p), q(n), sk(p);
    while (sweeps < opts.max_sweeps) {
        eval_derivs(data, z, ex, nullptr, &d1, &d2);
        v.noalias() = data.x.transpose() * d1;
        const double kkt = kkt_from_gradient(v, beta, l1, l2);
        out.kkt_residual = kkt;
        if (kkt <= opts.tol && last_step_full) {
            out.converged = true;
            break;
        }

        // Coordinate descent on the local quadratic model; t holds beta + delta.
        for (Index k = 0; k < p; ++k)
            sk(k) = (data.x.col(k).array().square() * d2.array()).sum();
        t = beta;
        q.setZero();
        const double inner_tol = std::max(0.1 * opts.tol, 1e-3 * kkt);
        for (int inner = 0; inner < 200 && sweeps < opts.max_sweeps; ++inner) {
            double maxch = 0;
            for (Index k = 0; k < p; ++k) {
                const double gk =
                    v(k) + (data.x.col(k).array() * d2.array() * q.array()).sum();
                const double a = sk(k) + 2.0 * l2;
                const double G = gk + 2.0 * l2 * t(k);
                const double tk = soft(a * t(k) - G, l1) / a;
                const double d = tk - t(k);
                if (d != 0.0) {
                    q.noalias() += data.x.col(k) * d;
                    t(k) = tk;
                    maxch = std::max(maxch, std::abs(d) * a);
                }
            }
            ++sweeps;
            if (maxch <= inner_tol) break;
        }

        const double model_dec = -(d1.dot(q) + 0.5 * (d2.array() * q.array().square()).sum() +
                                   penalty_value(pen, t) - penalty_value(pen, beta));
        if (!(model_dec > 0) && kkt <= opts.tol) {
            out.converged = true; // zero direction at an optimal point
            break;
        }

        // Armijo halving on the true objective; full steps keep zeros exact.
        double step = 1.0;
        bool accepted = false;
        const double slack = 1e-12 * (1.0 + std::abs(obj));
        VectorXd z_try(n), b_try(p);
        for (int h = 0; h < 60; ++h) {
            z_try = z + step * q;
            if (step == 1.0)
                b_try = t;
            else
                b_try = beta + step * (t - beta);
            const double obj_try = objective_at(z_try, b_try);
            if (std::isfinite(obj_try) &&
                obj_try <= obj - 1e-4 * step * model_dec + slack) {
                beta.swap(b_try);
                obj = obj_try;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // cannot make progress; report current state
        last_step_full = (step == 1.0);
        z.noalias() = data.x * beta; // exact predictor for the next model
        out.objective_trace.push_back(obj);
        check_finite_objective(obj);
    }

    eval_derivs(data, z, ex, nullptr, &d1, &d2);
    v.noalias() = data.x.transpose() * d1;
    out.kkt_residual = kkt_from_gradient(v, beta, l1, l2);
    if (out.kkt_residual <= opts.tol && last_step_full) out.converged = true;
    out.beta = std::move(beta);
    out.active_set = active_set_of(out.beta);
    out.subgrad = subgrad_from_gradient(v, out.beta, l1, l2);
    out.objective = obj;
    out.iterations = sweeps;
    return out;
}

} // namespace

double objective_of(const Dataset& data, const Penalty& pen, const VectorXd& beta,
                    Index exclude_row) {
    const VectorXd z = data.x * beta;
    double s = 0;
    for (Index i = 0; i < data.n(); ++i) {
        if (i == exclude_row) continue;
        s += loss_derivatives(data.family, data.y(i), z(i)).loss;
    }
    return s + penalty_value(pen, beta);
}

double kkt_residual_of(const Dataset& data, const Penalty& pen, const VectorXd& beta,
                       Index exclude_row) {
    const VectorXd z = data.x * beta;
    VectorXd d1(data.n());
    eval_derivs(data, z, exclude_row, nullptr, &d1, nullptr);
    const VectorXd v = data.x.transpose() * d1;
    return kkt_from_gradient(v, beta, pen.l1_weight(), pen.ridge_weight());
}

VectorXd subgradient_of(const Dataset& data, const Penalty& pen, const VectorXd& beta,
                        Index exclude_row) {
    const VectorXd z = data.x * beta;
    VectorXd d1(data.n());
    eval_derivs(data, z, exclude_row, nullptr, &d1, nullptr);
    const VectorXd v = data.x.transpose() * d1;
    return subgrad_from_gradient(v, beta, pen.l1_weight(), pen.ridge_weight());
}

FitResult fit(const Dataset& data, const Penalty& pen, const FitOptions& opts) {
    if (!(opts.tol > 0)) throw invalid_input("fit requires tol > 0");
    if (data.y.size() != data.n()) throw invalid_input("y length does not match x rows");
    if (opts.exclude_row >= data.n()) throw invalid_input("exclude_row out of range");

    if (data.family.kind == FamilyKind::gaussian) {
        if (pen.eta() == 1.0) return ridge_gaussian_closed_form(data, pen, opts);
        return gaussian_cd(data, pen, opts);
    }
    return prox_newton(data, pen, opts);
}

FitResult fit_loo(const Dataset& data, const Penalty& pen, Index i, const FitOptions& opts) {
    if (i < 0 || i >= data.n()) throw invalid_input("leave-one-out index out of range");
    FitOptions o = opts;
    o.exclude_row = i;
    if (!o.warm_start) {
        FitOptions full = opts;
        full.exclude_row = -1;
        o.warm_start = fit(data, pen, full).beta;
    }
    return fit(data, pen, o);
}

} // namespace aloenet
