#pragma once
// Test-only oracles, independent of the implementation paths they check.
#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "aloenet/dataset.hpp"
#include "aloenet/num.hpp"
#include "aloenet/penalty.hpp"
#include "aloenet/theory.hpp"

namespace oracles {

using aloenet::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline double central_diff(const std::function<double(double)>& f, double z, double h) {
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Golden-section search for a 1-D convex function.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

inline double grid_min(const std::function<double(double)>& f, double lo, double hi,
                       double step) {
    double best_x = lo, best_f = f(lo);
    for (double x = lo; x <= hi; x += step) {
        const double v = f(x);
        if (v < best_f) {
            best_f = v;
            best_x = x;
        }
    }
    return best_x;
}

// Elastic-net objective on a dataset, for scalar oracles.
inline double enet_objective_1d(const aloenet::Dataset& ds, const aloenet::Penalty& pen,
                                double b, Index skip = -1) {
    double s = 0;
    for (Index i = 0; i < ds.n(); ++i) {
        if (i == skip) continue;
        s += aloenet::loss_derivatives(ds.family, ds.y(i), ds.x(i, 0) * b).loss;
    }
    return s + pen.l1_weight() * std::abs(b) + pen.ridge_weight() * b * b;
}

// Dense-inverse oracle for the active-set H diagonal.
inline VectorXd h_diag_dense(const MatrixXd& x, const VectorXd& d2,
                             const std::vector<Index>& active, double ridge_weight) {
    const Index n = x.rows();
    const Index m = static_cast<Index>(active.size());
    VectorXd h = VectorXd::Zero(n);
    if (m == 0) return h;
    MatrixXd xs(n, m);
    for (Index j = 0; j < m; ++j) xs.col(j) = x.col(active[j]);
    MatrixXd a = xs.transpose() * d2.asDiagonal() * xs;
    a.diagonal().array() += 2.0 * ridge_weight;
    const MatrixXd inv = a.inverse();
    for (Index i = 0; i < n; ++i) h(i) = d2(i) * xs.row(i) * inv * xs.row(i).transpose();
    return h;
}

struct McMoments {
    double m2, zcorr, m2_se, zcorr_se;
};

// Monte-Carlo estimate of E[(w^f)^2] and E[Z w^f] with standard errors.
inline McMoments mc_moments(const aloenet::TheoryInput& in, double tau, double b, long samples,
                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<Index> pick(0, in.beta_star.size() - 1);
    const double shrink = b / (b + 2.0 * in.ridge_weight * tau);
    const double thr = in.l1_weight * tau / b;
    double s_m2 = 0, s_m2sq = 0, s_z = 0, s_zsq = 0;
    for (long t = 0; t < samples; ++t) {
        const double theta = in.beta_star(pick(rng));
        const double z = gauss(rng);
        const double w = shrink * aloenet::soft(tau * z + theta, thr) - theta;
        s_m2 += w * w;
        s_m2sq += w * w * w * w;
        s_z += z * w;
        s_zsq += z * z * w * w;
    }
    const double ns = static_cast<double>(samples);
    McMoments out;
    out.m2 = s_m2 / ns;
    out.zcorr = s_z / ns;
    out.m2_se = std::sqrt(std::max(0.0, s_m2sq / ns - out.m2 * out.m2) / ns);
    out.zcorr_se = std::sqrt(std::max(0.0, s_zsq / ns - out.zcorr * out.zcorr) / ns);
    return out;
}

// Draw p samples from mu*, the law of shrink * soft(tau Z + Theta, thr).
inline VectorXd sample_limit_law(const aloenet::TheoryInput& in, const aloenet::ScalarSolution& sol,
                                 Index p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<Index> pick(0, in.beta_star.size() - 1);
    const double shrink = sol.b_star / (sol.b_star + 2.0 * in.ridge_weight * sol.tau_star);
    const double thr = in.l1_weight * sol.tau_star / sol.b_star;
    VectorXd out(p);
    for (Index j = 0; j < p; ++j)
        out(j) = shrink * aloenet::soft(sol.tau_star * gauss(rng) + in.beta_star(pick(rng)), thr);
    return out;
}

// Independent fixed-point solver: plain nested bisection on both levels, no
// Newton anywhere. Uses only w_hat_f_moments as the shared primitive.
inline std::pair<double, double> nested_bisection_fixed_point(const aloenet::TheoryInput& in) {
    const auto inner = [&](double b) {
        double lo = in.sigma, hi = 2.0 * in.sigma;
        const auto f = [&](double tau) {
            return tau * tau - in.sigma * in.sigma -
                   aloenet::w_hat_f_moments(in, tau, b).m2 / in.gamma0;
        };
        if (f(lo) >= 0) return lo;
        int d = 0;
        while (f(hi) <= 0 && d++ < 200) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) > 0 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const auto g = [&](double b) {
        const double tau = inner(b);
        return tau - b - aloenet::w_hat_f_moments(in, tau, b).zcorr / in.gamma0;
    };
    double lo = 1e-12, hi = 2.0 * in.sigma;
    int d = 0;
    while (g(hi) >= 0 && d++ < 200) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0 ? lo : hi) = mid;
    }
    const double b = 0.5 * (lo + hi);
    return {inner(b), b};
}

} // namespace oracles
