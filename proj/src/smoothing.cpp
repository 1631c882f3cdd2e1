#include "aloenet/smoothing.hpp"

#include <cmath>

#include "aloenet/num.hpp"

namespace aloenet {

SmoothedDerivs smoothed_derivatives(double alpha, double z) {
    if (!(alpha > 0)) throw invalid_input("smoothing requires alpha > 0");
    const double az = alpha * std::abs(z);
    SmoothedDerivs out;
    out.r = std::abs(z) + (2.0 / alpha) * std::log1p(std::exp(-az));
    out.dr = std::tanh(0.5 * alpha * z);
    const double e = std::exp(-0.5 * az);            // sech(az/2) = 2e / (1 + e^2)
    const double sech = 2.0 * e / (1.0 + e * e);
    out.ddr = 0.5 * alpha * sech * sech;
    return out;
}

double smoothed_objective_of(const Dataset& data, const Penalty& pen, double alpha,
                             const VectorXd& beta) {
    const double w1 = pen.l1_weight(), w2 = pen.ridge_weight();
    const VectorXd z = data.x * beta;
    double s = 0;
    for (Index i = 0; i < data.n(); ++i)
        s += loss_derivatives(data.family, data.y(i), z(i)).loss;
    double reg = 0;
    for (Index k = 0; k < beta.size(); ++k) reg += smoothed_derivatives(alpha, beta(k)).r;
    return s + w1 * reg + w2 * beta.squaredNorm();
}

VectorXd smoothed_gradient_of(const Dataset& data, const Penalty& pen, double alpha,
                              const VectorXd& beta) {
    const double w1 = pen.l1_weight(), w2 = pen.ridge_weight();
    const VectorXd z = data.x * beta;
    VectorXd d1(data.n());
    for (Index i = 0; i < data.n(); ++i)
        d1(i) = loss_derivatives(data.family, data.y(i), z(i)).d1;
    VectorXd g = data.x.transpose() * d1;
    for (Index k = 0; k < beta.size(); ++k)
        g(k) += w1 * smoothed_derivatives(alpha, beta(k)).dr + 2.0 * w2 * beta(k);
    return g;
}

namespace {

// 1-D safeguarded Newton on psi(t) = a/2 (t-t0)^2 + g0 (t-t0) + w1 r_alpha(t) + w2 t^2.
// The tanh term is bounded, so [-(w1 + |..|), ...] gives a sign-definite bracket.
double minimize_coordinate(double a, double t0, double g0, double w1, double w2,
                           double alpha, double stop) {
    const double denom = a + 2.0 * w2;
    double lo = (a * t0 - g0 - w1) / denom - 1.0;
    double hi = (a * t0 - g0 + w1) / denom + 1.0;
    const auto dpsi = [&](double t) {
        return a * (t - t0) + g0 + w1 * std::tanh(0.5 * alpha * t) + 2.0 * w2 * t;
    };
    const auto ddpsi = [&](double t) {
        const double e = std::exp(-0.5 * alpha * std::abs(t));
        const double sech = 2.0 * e / (1.0 + e * e);
        return denom + w1 * 0.5 * alpha * sech * sech;
    };
    double t = std::min(std::max(t0, lo), hi);
    for (int it = 0; it < 100; ++it) {
        const double d = dpsi(t);
        if (std::abs(d) <= stop) return t;
        if (d > 0)
            hi = t;
        else
            lo = t;
        double step = t - d / ddpsi(t);
        if (!(step > lo && step < hi)) step = 0.5 * (lo + hi);
        if (step == t) break;
        t = step;
    }
    return t;
}

} // namespace

SmoothedFitResult fit_smoothed(const Dataset& data, const Penalty& pen, double alpha,
                               double tol, int max_sweeps) {
    if (!(alpha > 0)) throw invalid_input("fit_smoothed requires alpha > 0");
    if (!(tol > 0)) throw invalid_input("fit_smoothed requires tol > 0");

    const Index n = data.n(), p = data.p();
    const double w1 = pen.l1_weight(), w2 = pen.ridge_weight();
    const bool gaussian = data.family.kind == FamilyKind::gaussian;

    VectorXd beta = VectorXd::Zero(p);
    VectorXd z = VectorXd::Zero(n);
    VectorXd d1(n), d2(n);

    SmoothedFitResult out;
    out.alpha = alpha;
    double obj = smoothed_objective_of(data, pen, alpha, beta);

    int sweeps = 0;
    const double coord_stop = 1e-3 * tol;
    while (sweeps < max_sweeps) {
        for (Index i = 0; i < n; ++i) {
            const LossDerivs ld = loss_derivatives(data.family, data.y(i), z(i));
            d1(i) = ld.d1;
            d2(i) = ld.d2;
        }
        VectorXd v = data.x.transpose() * d1;
        double gnorm = 0;
        for (Index k = 0; k < p; ++k) {
            const double gk =
                v(k) + w1 * smoothed_derivatives(alpha, beta(k)).dr + 2.0 * w2 * beta(k);
            gnorm = std::max(gnorm, std::abs(gk));
        }
        out.gradient_norm = gnorm;
        if (gnorm <= tol) {
            out.converged = true;
            break;
        }

        // coordinate descent on the quadratic loss model + exact penalty
        VectorXd t = beta, q = VectorXd::Zero(n), sk(p);
        for (Index k = 0; k < p; ++k)
            sk(k) = (data.x.col(k).array().square() * d2.array()).sum();
        const double inner_tol = std::max(0.1 * tol, 1e-3 * gnorm);
        for (int inner = 0; inner < 200 && sweeps < max_sweeps; ++inner) {
            double maxch = 0;
            for (Index k = 0; k < p; ++k) {
                const double gk =
                    v(k) + (data.x.col(k).array() * d2.array() * q.array()).sum();
                const double tk =
                    minimize_coordinate(sk(k), t(k), gk, w1, w2, alpha, coord_stop);
                const double d = tk - t(k);
                if (d != 0.0) {
                    q.noalias() += data.x.col(k) * d;
                    t(k) = tk;
                    maxch = std::max(maxch, std::abs(d) * (sk(k) + 2.0 * w2));
                }
            }
            ++sweeps;
            if (maxch <= inner_tol) break;
        }

        if (gaussian) {
            beta = t; // model is exact; keep cycling until the gradient certifies
            z.noalias() = data.x * beta;
            obj = smoothed_objective_of(data, pen, alpha, beta);
        } else {
            double step = 1.0;
            bool accepted = false;
            for (int h = 0; h < 60; ++h) {
                const VectorXd b_try = beta + step * (t - beta);
                const double o_try = smoothed_objective_of(data, pen, alpha, b_try);
                if (std::isfinite(o_try) && o_try <= obj + 1e-12 * (1.0 + std::abs(obj))) {
                    beta = b_try;
                    obj = o_try;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
            z.noalias() = data.x * beta;
        }
        if (!std::isfinite(obj)) throw numeric_error("non-finite smoothed objective");
    }

    VectorXd g = smoothed_gradient_of(data, pen, alpha, beta);
    out.gradient_norm = g.lpNorm<Eigen::Infinity>();
    out.converged = out.gradient_norm <= tol;
    out.beta = std::move(beta);
    out.objective = obj;
    out.iterations = sweeps;
    return out;
}

} // namespace aloenet
