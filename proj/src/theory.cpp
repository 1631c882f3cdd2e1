#include "aloenet/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aloenet/num.hpp"

namespace aloenet {

void TheoryInput::validate() const {
    if (beta_star.size() < 1) throw invalid_input("theory input needs beta_star");
    if (!(sigma > 0 && std::isfinite(sigma))) throw invalid_input("theory sigma must be > 0");
    if (!(gamma0 > 0 && std::isfinite(gamma0))) throw invalid_input("theory gamma0 must be > 0");
    if (!(l1_weight >= 0) || !(ridge_weight >= 0))
        throw invalid_input("theory weights must be non-negative");
}

namespace {

// beta_star compressed to distinct values with weights; most entries are 0 in
// sparse designs so this collapses the bulk of the mixture.
struct Mixture {
    std::vector<double> theta;
    std::vector<double> weight;
};

Mixture compress(const VectorXd& beta_star) {
    std::vector<double> v(beta_star.data(), beta_star.data() + beta_star.size());
    std::sort(v.begin(), v.end());
    Mixture m;
    const double inv = 1.0 / static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        m.theta.push_back(v[i]);
        m.weight.push_back(static_cast<double>(j - i) * inv);
        i = j;
    }
    return m;
}

// E[soft(Z+a, rho)], E[soft(Z+a, rho)^2], E[soft'(Z+a, rho)] = P(|Z+a| > rho).
struct SoftMoments {
    double e1, e2, es;
};

SoftMoments soft_moments(double a, double rho) {
    const double u = a - rho, w = a + rho;
    const double Fu = norm_cdf(u), Fw = norm_cdf(-w);
    const double fu = norm_pdf(u), fw = norm_pdf(w);
    SoftMoments s;
    s.e1 = fu - fw + u * Fu + w * Fw;
    s.e2 = u * fu + (1.0 + u * u) * Fu - w * fw + (1.0 + w * w) * Fw;
    s.es = Fu + Fw;
    return s;
}

struct MixtureMoments {
    double m2, zcorr, s;
};

MixtureMoments mixture_moments(const Mixture& mix, double sigma_unused, double tau, double b,
                               double w1, double w2) {
    (void)sigma_unused;
    const double rho = (w1 == 0.0) ? 0.0 : w1 / b;
    const double c = b / (b + 2.0 * w2 * tau);
    const double ct = c * tau;
    std::vector<double> m2_terms(mix.theta.size()), z_terms(mix.theta.size()),
        s_terms(mix.theta.size());
    for (std::size_t j = 0; j < mix.theta.size(); ++j) {
        const double th = mix.theta[j];
        const double a = th / tau;
        const SoftMoments sm = soft_moments(a, rho);
        m2_terms[j] = mix.weight[j] * (ct * ct * sm.e2 - 2.0 * ct * th * sm.e1 + th * th);
        z_terms[j] = mix.weight[j] * ct * sm.es;
        s_terms[j] = mix.weight[j] * sm.es;
    }
    return {pairwise_sum(m2_terms), pairwise_sum(z_terms), pairwise_sum(s_terms)};
}

struct FixedPointProblem {
    Mixture mix;
    double sigma, gamma0, w1, w2;

    MixtureMoments moments(double tau, double b) const {
        return mixture_moments(mix, sigma, tau, b, w1, w2);
    }
    // inner equation residual at fixed b
    double f_tau(double tau, double b) const {
        return tau * tau - sigma * sigma - moments(tau, b).m2 / gamma0;
    }
};

constexpr int kMaxDoublings = 60;

// Unique zero of f_tau(., b) on [sigma, inf): f is negative at sigma and
// strictly increasing past its zero. Newton with a numerical derivative,
// bisection whenever the step leaves the bracket.
double inner_tau(const FixedPointProblem& fp, double b, double tau_cap_hint, double* cap_used) {
    const double sigma = fp.sigma;
    double f_lo = fp.f_tau(sigma, b);
    if (f_lo >= 0) return sigma; // degenerate: w^f vanishes at tau = sigma
    double hi = std::max(tau_cap_hint, 2.0 * sigma);
    int d = 0;
    while (fp.f_tau(hi, b) <= 0) {
        hi *= 2.0;
        if (++d > kMaxDoublings)
            throw numeric_error("fixed point: tau bracket exhausted after 60 doublings");
    }
    if (cap_used) *cap_used = std::max(*cap_used, hi);
    double lo = sigma;
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = fp.f_tau(t, b);
        if (std::abs(f) <= 1e-13 * std::max(1.0, t * t)) return t;
        if (f > 0)
            hi = t;
        else
            lo = t;
        const double h = 1e-6 * std::max(t, 1e-6);
        const double df = (fp.f_tau(t + h, b) - fp.f_tau(t - h, b)) / (2.0 * h);
        double cand = (df > 0) ? t - f / df : 0.5 * (lo + hi);
        if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
        if (cand == t) break;
        t = cand;
        if (hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) break;
    }
    return t;
}

} // namespace

WfMoments w_hat_f_moments(const TheoryInput& input, double tau, double b) {
    input.validate();
    if (!(tau > 0 && b > 0)) throw invalid_input("moments need tau > 0 and b > 0");
    const Mixture mix = compress(input.beta_star);
    const MixtureMoments m =
        mixture_moments(mix, input.sigma, tau, b, input.l1_weight, input.ridge_weight);
    return {m.m2, m.zcorr};
}

ScalarSolution solve_fixed_point(const TheoryInput& input) {
    input.validate();
    FixedPointProblem fp{compress(input.beta_star), input.sigma, input.gamma0, input.l1_weight,
                         input.ridge_weight};

    // tau0(0+)^2 = sigma^2 + E[Theta^2]/gamma0 caps the inner solve initially.
    double e_th2 = 0;
    for (std::size_t j = 0; j < fp.mix.theta.size(); ++j)
        e_th2 += fp.mix.weight[j] * fp.mix.theta[j] * fp.mix.theta[j];
    double tau_cap = 2.0 * std::sqrt(input.sigma * input.sigma + e_th2 / input.gamma0);
    double cap_used = tau_cap;

    const auto g_outer = [&](double b) {
        const double t = inner_tau(fp, b, tau_cap, &cap_used);
        const double zc = fp.moments(t, b).zcorr;
        return t - b - zc / input.gamma0;
    };

    // g is strictly decreasing with a positive limit at 0+; bracket by doubling.
    double b_lo = 1e-12 * std::max(1.0, input.sigma);
    int d = 0;
    while (g_outer(b_lo) <= 0) {
        b_lo *= 0.5;
        if (++d > kMaxDoublings)
            throw numeric_error("fixed point: lower b bracket exhausted after 60 doublings");
    }
    double b_hi = std::max(2.0 * input.sigma, tau_cap);
    d = 0;
    while (g_outer(b_hi) >= 0) {
        b_hi *= 2.0;
        if (++d > kMaxDoublings)
            throw numeric_error("fixed point: upper b bracket exhausted after 60 doublings");
    }

    ScalarSolution sol;
    sol.bracket.b_min = b_lo;
    sol.bracket.b_max = b_hi;

    double lo = b_lo, hi = b_hi, b = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double g = g_outer(b);
        if (std::abs(g) <= 1e-13 * std::max(1.0, b)) break;
        if (g > 0)
            lo = b;
        else
            hi = b;
        b = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, b)) break;
    }

    const double tau = inner_tau(fp, b, tau_cap, &cap_used);
    const MixtureMoments m = fp.moments(tau, b);
    sol.tau_star = tau;
    sol.b_star = b;
    sol.bracket.tau_max = cap_used;
    sol.residuals[0] = std::abs(tau * tau - input.sigma * input.sigma - m.m2 / input.gamma0);
    sol.residuals[1] = std::abs(tau - b - m.zcorr / input.gamma0);
    sol.s_star = m.s;
    if (sol.residuals[0] > 1e-10 || sol.residuals[1] > 1e-10)
        throw numeric_error("fixed point residuals exceed 1e-10");
    return sol;
}

double s_star(const TheoryInput& input, double tau_star, double b_star) {
    input.validate();
    if (!(tau_star > 0 && b_star > 0)) throw invalid_input("s_star needs tau, b > 0");
    const Mixture mix = compress(input.beta_star);
    const double rho = (input.l1_weight == 0.0) ? 0.0 : input.l1_weight / b_star;
    std::vector<double> terms(mix.theta.size());
    for (std::size_t j = 0; j < mix.theta.size(); ++j) {
        const double a = mix.theta[j] / tau_star;
        terms[j] = mix.weight[j] * (norm_cdf(a - rho) + norm_cdf(-a - rho));
    }
    return pairwise_sum(terms);
}

namespace {

struct LimitLaw {
    Mixture mix;
    double tau, shrink, rho; // V = shrink * tau * soft(Z + a, rho)

    double cdf(double v) const {
        const double ct = shrink * tau;
        std::vector<double> terms(mix.theta.size());
        for (std::size_t j = 0; j < mix.theta.size(); ++j) {
            const double a = mix.theta[j] / tau;
            const double arg = v / ct + (v >= 0 ? rho : -rho) - a;
            terms[j] = mix.weight[j] * norm_cdf(arg);
        }
        return pairwise_sum(terms);
    }
    double cdf_left_of_zero() const {
        std::vector<double> terms(mix.theta.size());
        for (std::size_t j = 0; j < mix.theta.size(); ++j)
            terms[j] = mix.weight[j] * norm_cdf(-rho - mix.theta[j] / tau);
        return pairwise_sum(terms);
    }
};

LimitLaw make_limit_law(const TheoryInput& input, const ScalarSolution& sol) {
    LimitLaw law;
    law.mix = compress(input.beta_star);
    law.tau = sol.tau_star;
    law.shrink = sol.b_star / (sol.b_star + 2.0 * input.ridge_weight * sol.tau_star);
    law.rho = (input.l1_weight == 0.0) ? 0.0 : input.l1_weight / sol.b_star;
    return law;
}

// Smallest v with F(v) >= q, resolved to 1e-10; the atom at zero is returned as 0.
double quantile_impl(const LimitLaw& law, double q, double warm_lo) {
    const double F0 = law.cdf(0.0);
    const double F0m = law.cdf_left_of_zero();
    if (q > F0m && q <= F0) return 0.0;

    double lo, hi;
    const double ct = law.shrink * law.tau;
    double span = ct * (8.0 + law.rho);
    for (const double th : law.mix.theta) span = std::max(span, ct * (8.0 + law.rho) + std::abs(th));
    if (q <= F0m) {
        hi = 0.0;
        lo = std::isfinite(warm_lo) ? warm_lo : -span;
        int d = 0;
        while (law.cdf(lo) >= q) {
            lo = (lo < 0 ? lo * 2.0 : -span);
            if (++d > kMaxDoublings) throw numeric_error("quantile bracket exhausted");
        }
    } else {
        lo = std::max(0.0, std::isfinite(warm_lo) ? warm_lo : 0.0);
        hi = std::max(span, 2.0 * lo + 1.0);
        int d = 0;
        while (law.cdf(hi) < q) {
            hi *= 2.0;
            if (++d > kMaxDoublings) throw numeric_error("quantile bracket exhausted");
        }
        if (law.cdf(lo) >= q) lo = 0.0;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (law.cdf(mid) >= q)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-10 * std::max(1.0, std::abs(hi)) && hi - lo <= 1e-10) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double limiting_cdf(const TheoryInput& input, const ScalarSolution& sol, double v) {
    input.validate();
    return make_limit_law(input, sol).cdf(v);
}

double limiting_quantile(const TheoryInput& input, const ScalarSolution& sol, double q) {
    input.validate();
    if (!(q > 0 && q < 1)) throw invalid_input("quantile needs q in (0, 1)");
    return quantile_impl(make_limit_law(input, sol),
                         q, std::numeric_limits<double>::quiet_NaN());
}

double wasserstein2_to_limit(const VectorXd& beta_hat, const TheoryInput& input,
                             const ScalarSolution& sol) {
    input.validate();
    const Index p = beta_hat.size();
    if (p < 1) throw invalid_input("wasserstein2_to_limit needs a nonempty beta_hat");
    std::vector<double> sorted(beta_hat.data(), beta_hat.data() + p);
    std::sort(sorted.begin(), sorted.end());

    const LimitLaw law = make_limit_law(input, sol);
    double acc = 0;
    double warm = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < p; ++j) {
        const double q = (static_cast<double>(j) + 0.5) / static_cast<double>(p);
        const double quant =
            quantile_impl(law, q, std::isfinite(warm) ? warm : std::numeric_limits<double>::quiet_NaN());
        warm = quant;
        const double d = sorted[static_cast<std::size_t>(j)] - quant;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(p));
}

SparsityCheck sparsity_check(const FitResult& fit, const ScalarSolution& sol) {
    const double p = static_cast<double>(fit.beta.size());
    SparsityCheck out;
    out.empirical = static_cast<double>(fit.active_set.size()) / p;
    out.predicted = sol.s_star;
    out.gap = std::abs(out.empirical - out.predicted);
    return out;
}

SubgradientTailCheck subgradient_tail_check(const FitResult& fit, const ScalarSolution& sol,
                                            double eps) {
    if (!(eps > 0)) throw invalid_input("subgradient_tail_check needs eps > 0");
    const Index p = fit.subgrad.size();
    long count = 0;
    for (Index k = 0; k < p; ++k)
        if (std::abs(fit.subgrad(k)) >= 1.0 - eps) ++count;
    SubgradientTailCheck out;
    out.fraction = static_cast<double>(count) / static_cast<double>(p);
    out.bound_ref = sol.s_star;
    out.excess = (out.fraction - out.bound_ref) / eps;
    return out;
}

} // namespace aloenet
