#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "aloenet/num.hpp"
#include "aloenet/solver.hpp"
#include "oracles.hpp"

using namespace aloenet;

namespace {

Dataset small_gaussian(Index n, Index p, std::uint64_t seed, double sparsity = 0.2) {
    SyntheticSpec s;
    s.n = n;
    s.p = p;
    s.sparsity = sparsity;
    s.coef_sd = 1.0;
    s.family = GlmFamily{FamilyKind::gaussian, 1.0};
    s.seed = seed;
    return make_synthetic(s).first;
}

Dataset small_glm(FamilyKind kind, Index n, Index p, std::uint64_t seed) {
    SyntheticSpec s;
    s.n = n;
    s.p = p;
    s.sparsity = 0.3;
    s.coef_sd = 1.0;
    s.column_variance = 1.0 / static_cast<double>(n);
    s.family = GlmFamily{kind, 1.0};
    s.seed = seed;
    return make_synthetic(s).first;
}

} // namespace

TEST_CASE("soft-threshold kill condition at the origin") {
    Dataset ds = small_gaussian(40, 15, 3);
    const double lmax = (ds.x.transpose() * ds.y).cwiseAbs().maxCoeff();
    const double eta = 0.5;
    const Penalty pen(2.0 * lmax * 1.01, eta); // l1 weight = 1.01 * lmax
    const FitResult res = fit(ds, pen);
    CHECK(res.converged);
    CHECK(res.beta.norm() == 0.0);
    CHECK(res.active_set.empty());
}

TEST_CASE("2x2 identity instance has the per-coordinate closed form") {
    Dataset ds;
    ds.family = GlmFamily{FamilyKind::gaussian, 1.0};
    ds.x = Eigen::MatrixXd::Identity(2, 2);
    ds.y.resize(2);
    ds.y << 3.0, 0.1;
    const Penalty pen(1.0, 0.5); // l1 = 0.5, ridge = 0.5
    const FitResult res = fit(ds, pen);
    CHECK(res.converged);
    // soft(y_k, 0.5) / (1 + 2*0.5)
    CHECK(res.beta(0) == doctest::Approx(1.25).epsilon(1e-10));
    CHECK(res.beta(1) == 0.0);
    CHECK(res.active_set == std::vector<Index>{0});

    // grid-search oracle per separable coordinate
    for (Index k = 0; k < 2; ++k) {
        const auto obj = [&](double b) {
            return 0.5 * (ds.y(k) - b) * (ds.y(k) - b) + 0.5 * std::abs(b) + 0.5 * b * b;
        };
        const double bg = oracles::grid_min(obj, -1.0, 3.0, 1e-4);
        CHECK(std::abs(bg - res.beta(k)) <= 2e-4);
    }
}

TEST_CASE("certificate holds and is recomputable") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Dataset ds = small_gaussian(100, 200, seed);
        const Penalty pen(2.0, 0.5);
        const FitResult res = fit(ds, pen);
        CHECK(res.converged);
        CHECK(res.kkt_residual <= 1e-8);
        CHECK(kkt_residual_of(ds, pen, res.beta) <= 1.000001e-8);
        CHECK(res.subgrad.lpNorm<Eigen::Infinity>() <= 1.0 + 1e-6);
        for (Index k : res.active_set) {
            CHECK(res.beta(k) != 0.0);
            const double sg = res.subgrad(k);
            CHECK(std::abs(sg - (res.beta(k) > 0 ? 1.0 : -1.0)) <= 1e-6);
        }
    }
}

TEST_CASE("objective trace is non-increasing") {
    Dataset ds = small_gaussian(60, 90, 5);
    const FitResult res = fit(ds, Penalty(1.0, 0.3));
    REQUIRE(res.objective_trace.size() > 1);
    for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
        CHECK(res.objective_trace[i] <=
              res.objective_trace[i - 1] + 1e-10 * (1.0 + std::abs(res.objective_trace[i - 1])));
}

TEST_CASE("ridge strong convexity pins the solution across warm starts") {
    Dataset ds = small_gaussian(50, 70, 9);
    const Penalty pen(1.5, 0.4);
    FitOptions a;
    const FitResult r1 = fit(ds, pen, a);
    FitOptions b;
    b.warm_start = VectorXd::Constant(70, 0.7);
    const FitResult r2 = fit(ds, pen, b);
    CHECK(r1.converged);
    CHECK(r2.converged);
    CHECK((r1.beta - r2.beta).norm() <= 10.0 * 1e-8 / (2.0 * pen.ridge_weight()));
}

TEST_CASE("leave-one-out perturbation bound (x_i scale over ridge curvature)") {
    for (FamilyKind kind : {FamilyKind::gaussian, FamilyKind::logistic}) {
        Dataset ds = small_glm(kind, 30, 20, 12);
        const Penalty pen(1.0, 0.5);
        const FitResult full = fit(ds, pen);
        REQUIRE(full.converged);
        const VectorXd z = ds.x * full.beta;
        for (Index i = 0; i < ds.n(); ++i) {
            FitOptions o;
            o.warm_start = full.beta;
            const FitResult loo = fit_loo(ds, pen, i, o);
            REQUIRE(loo.converged);
            const double d1 = loss_derivatives(ds.family, ds.y(i), z(i)).d1;
            const double bound =
                std::abs(d1) * ds.x.row(i).norm() / (2.0 * pen.ridge_weight());
            CHECK((full.beta - loo.beta).norm() <= bound + 1e-9);
        }
    }
}

TEST_CASE("scalar leave-one-out matches a golden-section oracle") {
    Dataset ds;
    ds.family = GlmFamily{FamilyKind::gaussian, 1.0};
    ds.x.resize(3, 1);
    ds.x << 1.0, -0.5, 2.0;
    ds.y.resize(3);
    ds.y << 2.0, 1.0, -1.0;
    const Penalty pen(0.8, 0.5);
    for (Index i = 0; i < 3; ++i) {
        const FitResult loo = fit_loo(ds, pen, i);
        REQUIRE(loo.converged);
        const auto obj = [&](double b) { return oracles::enet_objective_1d(ds, pen, b, i); };
        const double oracle = oracles::golden_min(obj, -5.0, 5.0, 1e-10);
        CHECK(std::abs(loo.beta(0) - oracle) <= 1e-6);
    }
}

TEST_CASE("a zero row contributes nothing to the fit") {
    Dataset ds = small_gaussian(25, 10, 21);
    ds.x.row(7).setZero();
    const Penalty pen(1.0, 0.5);
    const FitResult full = fit(ds, pen);
    REQUIRE(full.converged);
    FitOptions o;
    o.warm_start = full.beta;
    const FitResult loo = fit_loo(ds, pen, 7, o);
    CHECK(loo.beta == full.beta); // the warm start is already optimal, bit for bit
}

TEST_CASE("duplicate rows: removing one changes the objective by a single loss term") {
    Dataset ds = small_gaussian(20, 8, 30);
    ds.x.row(4) = ds.x.row(5);
    ds.y(4) = ds.y(5);
    const Penalty pen(0.7, 0.5);
    const FitResult loo = fit_loo(ds, pen, 4);
    REQUIRE(loo.converged);
    CHECK(kkt_residual_of(ds, pen, loo.beta, 4) <= 1.000001e-8);
    const double with_row = objective_of(ds, pen, loo.beta);
    const double without = objective_of(ds, pen, loo.beta, 4);
    const double li = loss_derivatives(ds.family, ds.y(4), ds.x.row(4).dot(loo.beta)).loss;
    CHECK(with_row - without == doctest::Approx(li).epsilon(1e-12));
}

TEST_CASE("logistic and poisson proximal Newton certify the same KKT system") {
    for (FamilyKind kind : {FamilyKind::logistic, FamilyKind::poisson}) {
        for (std::uint64_t seed : {4ull, 5ull}) {
            Dataset ds = small_glm(kind, 80, 50, seed);
            const Penalty pen(0.5, 0.5);
            const FitResult res = fit(ds, pen);
            CHECK(res.converged);
            CHECK(res.kkt_residual <= 1e-8);
            CHECK(kkt_residual_of(ds, pen, res.beta) <= 1.000001e-8);
            CHECK(res.subgrad.lpNorm<Eigen::Infinity>() <= 1.0 + 1e-6);
            for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
                CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] +
                                                    1e-10 * (1.0 + std::abs(res.objective_trace[i - 1])));
        }
    }
}

TEST_CASE("pure ridge closed form matches a dense solve") {
    Dataset ds = small_gaussian(60, 25, 40);
    const Penalty pen(1.3, 1.0);
    const FitResult res = fit(ds, pen);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.subgrad.norm() == 0.0);

    Eigen::MatrixXd A = ds.x.transpose() * ds.x;
    A.diagonal().array() += 2.0 * pen.ridge_weight();
    const VectorXd oracle = A.ldlt().solve(ds.x.transpose() * ds.y);
    CHECK((res.beta - oracle).norm() <= 1e-10 * (1.0 + oracle.norm()));

    SUBCASE("dual path when p > n") {
        Dataset wide = small_gaussian(20, 45, 41);
        const FitResult rw = fit(wide, pen);
        CHECK(rw.converged);
        Eigen::MatrixXd Aw = wide.x.transpose() * wide.x;
        Aw.diagonal().array() += 2.0 * pen.ridge_weight();
        const VectorXd ow = Aw.ldlt().solve(wide.x.transpose() * wide.y);
        CHECK((rw.beta - ow).norm() <= 1e-9 * (1.0 + ow.norm()));
    }
}

TEST_CASE("input rejection and non-convergence flagging") {
    Dataset ds = small_gaussian(30, 12, 50);
    const Penalty pen(1.0, 0.5);
    FitOptions o;
    o.tol = 0.0;
    CHECK_THROWS_AS(fit(ds, pen, o), invalid_input);
    CHECK_THROWS_AS(fit_loo(ds, pen, 99), invalid_input);
    CHECK_THROWS_AS(Penalty(0.0, 0.5), invalid_input);
    CHECK_THROWS_AS(Penalty(1.0, 0.0), invalid_input);
    CHECK_THROWS_AS(Penalty(1.0, 1.5), invalid_input);

    FitOptions tiny;
    tiny.tol = 1e-300; // unreachable: flagged, not fatal
    tiny.max_sweeps = 5;
    const FitResult res = fit(ds, pen, tiny);
    CHECK_FALSE(res.converged);

    FitOptions wrong;
    wrong.warm_start = VectorXd::Zero(5);
    CHECK_THROWS_AS(fit(ds, pen, wrong), invalid_input);
}

TEST_CASE("noise variance rescales like a penalty multiplier") {
    // (1/(2 s^2))||y - Xb||^2 + pen(b) has the same argmin as
    // (1/2)||y - Xb||^2 + s^2 pen(b)
    Dataset ds = small_gaussian(40, 25, 61);
    const double s = 2.0;
    Dataset scaled = ds;
    scaled.family.noise_sd = s;
    const FitResult a = fit(scaled, Penalty(1.0, 0.4));
    ds.family.noise_sd = 1.0;
    const FitResult b = fit(ds, Penalty(s * s * 1.0, 0.4));
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK((a.beta - b.beta).lpNorm<Eigen::Infinity>() <= 1e-7);
    CHECK(a.active_set == b.active_set);
}
