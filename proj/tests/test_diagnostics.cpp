#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "aloenet/diagnostics.hpp"
#include "aloenet/risk.hpp"

using namespace aloenet;

namespace {

// Brute-force set builder, independent of the library's sorted-merge route.
struct BruteSets {
    std::set<Index> s1, s0, s1l, s0l, b1, b0, b1p;
    Index theorem_delta = 0, sym_diff = 0;
};

BruteSets brute(const VectorXd& beta, const VectorXd& g, const VectorXd& beta_l,
                const VectorXd& g_l, double k0, double k1) {
    BruteSets r;
    const Index p = beta.size();
    for (Index k = 0; k < p; ++k) {
        if (std::abs(beta(k)) > k1) r.s1.insert(k);
        if (std::abs(g(k)) <= 1.0 - k0) r.s0.insert(k);
        if (std::abs(beta_l(k)) > k1) r.s1l.insert(k);
        if (std::abs(g_l(k)) <= 1.0 - k0) r.s0l.insert(k);
    }
    for (Index k : r.s1)
        if (r.s1l.count(k)) r.b1.insert(k);
    for (Index k : r.s0)
        if (r.s0l.count(k)) r.b0.insert(k);
    for (Index k : r.b1)
        if (beta(k) * beta_l(k) > 0) r.b1p.insert(k);
    std::set<Index> uni = r.b0;
    uni.insert(r.b1p.begin(), r.b1p.end());
    r.theorem_delta = p - static_cast<Index>(uni.size());
    std::set<Index> sa, sb;
    for (Index k = 0; k < p; ++k) {
        if (beta(k) != 0.0) sa.insert(k);
        if (beta_l(k) != 0.0) sb.insert(k);
    }
    for (Index k : sa)
        if (!sb.count(k)) ++r.sym_diff;
    for (Index k : sb)
        if (!sa.count(k)) ++r.sym_diff;
    return r;
}

FitResult fake_fit(const VectorXd& beta, const VectorXd& g) {
    FitResult f;
    f.beta = beta;
    f.subgrad = g;
    for (Index k = 0; k < beta.size(); ++k)
        if (beta(k) != 0.0) f.active_set.push_back(k);
    f.converged = true;
    return f;
}

Dataset dummy_dataset(Index p) {
    Dataset ds;
    ds.family = GlmFamily{FamilyKind::gaussian, 1.0};
    ds.x = MatrixXd::Zero(2, p);
    ds.x(0, 0) = 1.0;
    ds.y = VectorXd::Zero(2);
    return ds;
}

} // namespace

TEST_CASE("defaults follow the stated closed forms and stay inside (0,1)") {
    const auto cfg = DiagnosticsConfig::defaults_for(1000);
    CHECK(cfg.kappa0 ==
          doctest::Approx(std::pow(8.0 * std::log(1000.0) / 1000.0, 1.0 / 6.0)).epsilon(1e-12));
    CHECK(cfg.kappa1 ==
          doctest::Approx(std::pow(1000.0, -1.0 / 12.0) * std::pow(std::log(1000.0), 0.25))
              .epsilon(1e-12));
    CHECK(cfg.kappa0 > 0);
    CHECK(cfg.kappa0 < 1);
    CHECK(cfg.kappa1 > 0);
    CHECK(cfg.kappa1 < 1);
    // the closed forms exceed 1 at small p; defaults clamp
    const auto small = DiagnosticsConfig::defaults_for(8);
    CHECK(small.kappa0 < 1.0);
    CHECK(small.kappa1 < 1.0);
    // larger c shrinks kappa0
    CHECK(DiagnosticsConfig::defaults_for(1000, 4.0).kappa0 < cfg.kappa0);
}

TEST_CASE("config validation") {
    DiagnosticsConfig bad;
    bad.kappa0 = 1.5;
    bad.kappa1 = 0.5;
    const Dataset ds = dummy_dataset(4);
    const FitResult f = fake_fit(VectorXd::Zero(4), VectorXd::Zero(4));
    CHECK_THROWS_AS(active_set_diagnostics(f, {f}, ds, Penalty(1.0, 0.5), bad), invalid_input);
    bad.kappa0 = 0.5;
    bad.kappa1 = 0.0;
    CHECK_THROWS_AS(active_set_diagnostics(f, {f}, ds, Penalty(1.0, 0.5), bad), invalid_input);
}

TEST_CASE("hand instance enumerated against the brute-force builder") {
    VectorXd beta(4), g(4), beta_l(4), g_l(4);
    beta << 0.5, 0.0, -0.3, 0.0;
    g << 1.0, 0.3, -1.0, 0.5;
    beta_l << 0.5, 0.2, 0.3, 0.0;
    g_l << 1.0, 1.0, 1.0, 0.2;
    DiagnosticsConfig cfg;
    cfg.kappa0 = 0.05;
    cfg.kappa1 = 0.1;

    const Dataset ds = dummy_dataset(4);
    const auto diag = active_set_diagnostics(fake_fit(beta, g), {fake_fit(beta_l, g_l)}, ds,
                                             Penalty(1.0, 0.5), cfg);
    const BruteSets ref = brute(beta, g, beta_l, g_l, cfg.kappa0, cfg.kappa1);

    const auto& d = diag.per_i.at(0);
    CHECK(std::set<Index>(d.b1.begin(), d.b1.end()) == ref.b1);
    CHECK(std::set<Index>(d.b1_plus.begin(), d.b1_plus.end()) == ref.b1p);
    CHECK(std::set<Index>(d.b0.begin(), d.b0.end()) == ref.b0);
    CHECK(d.theorem_delta == ref.theorem_delta);
    CHECK(d.sym_diff == ref.sym_diff);

    // 1-based sets from the construction: b1 = {1,3}, b1_plus = {1}
    CHECK(ref.b1 == std::set<Index>{0, 2});
    CHECK(ref.b1p == std::set<Index>{0});
    // the sign flip at coordinate 3 keeps the plain symmetric difference at 1
    CHECK(d.sym_diff == 1);
    CHECK(d.theorem_delta == 2);
    CHECK(diag.d_n == 2);
}

TEST_CASE("identical leave-one-out fit collapses the perturbation sets") {
    VectorXd beta(5), g(5);
    beta << 1.0, 0.0, -2.0, 0.0, 0.4;
    g << 1.0, 0.2, -1.0, -0.4, 1.0;
    DiagnosticsConfig cfg;
    cfg.kappa0 = 0.1;
    cfg.kappa1 = 0.05;
    const FitResult f = fake_fit(beta, g);
    const Dataset ds = dummy_dataset(5);
    const auto diag = active_set_diagnostics(f, {f, f}, ds, Penalty(1.0, 0.5), cfg);
    for (const auto& d : diag.per_i) {
        CHECK(d.sym_diff == 0);
        // every coordinate is in S0 or S1 here, so only the kappa-gap band remains
        const BruteSets ref = brute(beta, g, beta, g, cfg.kappa0, cfg.kappa1);
        CHECK(d.theorem_delta == ref.theorem_delta);
    }
}

TEST_CASE("diagnostics invariants on fitted instances") {
    SyntheticSpec s;
    s.n = 40;
    s.p = 30;
    s.sparsity = 0.3;
    s.coef_sd = 1.0;
    s.family = GlmFamily{FamilyKind::gaussian, 1.0};
    s.seed = 77;
    const Dataset ds = make_synthetic(s).first;
    const Penalty pen(0.8, 0.5);
    const FitResult full = fit(ds, pen);
    REQUIRE(full.converged);
    auto [rep, loo_fits] = lo_exact(ds, pen, PhiTag::squared_error, 1e-8, 2);
    const DiagnosticsConfig cfg = DiagnosticsConfig::defaults_for(ds.p());
    const auto diag = active_set_diagnostics(full, loo_fits, ds, pen, cfg);

    // S1 inside the active set, S0 inside its complement
    for (Index k : diag.s1_full)
        CHECK(std::binary_search(full.active_set.begin(), full.active_set.end(), k));
    for (Index k : diag.s0_full)
        CHECK_FALSE(std::binary_search(full.active_set.begin(), full.active_set.end(), k));

    for (std::size_t i = 0; i < diag.per_i.size(); ++i) {
        const auto& d = diag.per_i[i];
        std::vector<Index> both;
        std::set_intersection(d.b1.begin(), d.b1.end(), d.b0.begin(), d.b0.end(),
                              std::back_inserter(both));
        CHECK(both.empty());
        CHECK(std::includes(d.b1.begin(), d.b1.end(), d.b1_plus.begin(), d.b1_plus.end()));
        CHECK(d.theorem_delta <= ds.p());
        CHECK(d.sym_diff <= static_cast<Index>(full.active_set.size() +
                                               loo_fits[i].active_set.size()));
        const BruteSets ref = brute(full.beta, full.subgrad, loo_fits[i].beta,
                                    loo_fits[i].subgrad, cfg.kappa0, cfg.kappa1);
        CHECK(d.theorem_delta == ref.theorem_delta);
        CHECK(d.sym_diff == ref.sym_diff);
    }
    CHECK(diag.d_n ==
          std::max_element(diag.per_i.begin(), diag.per_i.end(), [](const auto& a, const auto& b) {
              return a.theorem_delta < b.theorem_delta;
          })->theorem_delta);
}

TEST_CASE("row permutation permutes per_i and preserves d_n") {
    SyntheticSpec s;
    s.n = 18;
    s.p = 12;
    s.sparsity = 0.3;
    s.coef_sd = 1.0;
    s.family = GlmFamily{FamilyKind::gaussian, 1.0};
    s.seed = 99;
    const Dataset ds = make_synthetic(s).first;
    std::vector<Index> perm(ds.n());
    std::iota(perm.begin(), perm.end(), Index(0));
    std::mt19937_64 rng(5);
    std::shuffle(perm.begin(), perm.end(), rng);
    Dataset pd;
    pd.family = ds.family;
    pd.x.resize(ds.n(), ds.p());
    pd.y.resize(ds.n());
    for (Index i = 0; i < ds.n(); ++i) {
        pd.x.row(i) = ds.x.row(perm[i]);
        pd.y(i) = ds.y(perm[i]);
    }
    const Penalty pen(0.8, 0.5);
    const DiagnosticsConfig cfg = DiagnosticsConfig::defaults_for(ds.p());

    const FitResult f1 = fit(ds, pen);
    auto [r1, l1] = lo_exact(ds, pen, PhiTag::squared_error, 1e-8);
    const auto d1 = active_set_diagnostics(f1, l1, ds, pen, cfg);

    const FitResult f2 = fit(pd, pen);
    auto [r2, l2] = lo_exact(pd, pen, PhiTag::squared_error, 1e-8);
    const auto d2 = active_set_diagnostics(f2, l2, pd, pen, cfg);

    CHECK(d1.d_n == d2.d_n);
    for (Index i = 0; i < ds.n(); ++i)
        CHECK(d2.per_i[i].sym_diff == d1.per_i[static_cast<std::size_t>(perm[i])].sym_diff);
}
