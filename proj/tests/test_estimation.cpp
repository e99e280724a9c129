#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "afc/estimation.hpp"
#include "afc/sampler.hpp"
#include "afc/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

using namespace afc;

namespace {

AfcModel sim_model(Family k, double tau = 0.5, Direction dir = Direction::positive) {
    return AfcModel(k, WeibullParams{1.0, 3.0}, DependenceSpec{2.0, -4.0, tau, dir});
}

std::vector<Observation> simulate(const AfcModel& m, std::size_t n, std::uint64_t seed) {
    ChainConfig cfg;
    cfg.n_draws = n;
    cfg.burn_in = 2000;
    cfg.thin = 5;
    cfg.seed = seed;
    return run_chain(m, cfg).draws;
}

// Four points whose sample moments (1/n convention) hit the targets exactly:
// a zero-mean unit-variance pair of designs with prescribed correlation.
std::vector<Observation> moment_design(double mx, double sx, double my, double sy, double r) {
    const double s3 = std::sqrt(3.0);
    const double s2 = std::sqrt(2.0);
    const std::array<double, 4> a{s3, -1.0 / s3, -1.0 / s3, -1.0 / s3};
    const std::array<double, 4> e{0.0, s2, 0.0, -s2};
    const double q = std::sqrt(1.0 - r * r);
    std::vector<Observation> out;
    out.reserve(4);
    for (int i = 0; i < 4; ++i)
        out.push_back({mx + sx * a[i], my + sy * (r * a[i] + q * e[i])});
    return out;
}

} // namespace

TEST_CASE("sample moments") {
    const std::vector<Observation> data{{1.0, 2.0}, {3.0, 4.0}};
    const auto m = compute_moments(data);
    CHECK(m.n == 2);
    CHECK(m.mean_x == 2.0);
    CHECK(m.mean_y == 3.0);
    CHECK(m.var_x == 1.0);
    CHECK(m.var_y == 1.0);
    CHECK(m.cov_xy == 1.0);
    CHECK(pearson(data) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(compute_moments(std::vector<Observation>{{1.0, 2.0}}),
                    std::invalid_argument);

    const auto design = moment_design(2.0, 0.5, -1.0, 3.0, 0.4);
    const auto dm = compute_moments(design);
    CHECK(dm.mean_x == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dm.mean_y == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dm.var_x == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(dm.var_y == doctest::Approx(9.0).epsilon(1e-13));
    CHECK(dm.cov_xy == doctest::Approx(0.6).epsilon(1e-13));
}

TEST_CASE("moment estimator inverts exact model moments") {
    for (Family k : {Family::logistic, Family::gumbel, Family::laplace}) {
        for (double shape : {1.0, 2.0, 3.0}) {
            for (double tau : {0.25, 0.5, 0.9}) {
                const Direction dir = (k == Family::laplace && tau == 0.5)
                                          ? Direction::negative
                                          : Direction::positive;
                const AfcModel truth(k, WeibullParams{1.0, shape},
                                     DependenceSpec{2.0, -4.0, tau, dir});
                const auto [mx, vx] = weibull_mean_var(WeibullParams{1.0, shape});
                const auto [my, vy] = family_mean_var(k, -4.0, 2.0);
                const double r = truth.covariance() / std::sqrt(vx * vy);
                const auto data = moment_design(mx, std::sqrt(vx), my, std::sqrt(vy), r);
                const auto fit = mme(data, k, dir);
                CHECK(fit.marginal.alpha == doctest::Approx(1.0).epsilon(1e-6));
                CHECK(fit.marginal.shape == doctest::Approx(shape).epsilon(1e-6));
                CHECK(fit.dependence.beta == doctest::Approx(2.0).epsilon(1e-6));
                CHECK(fit.dependence.gamma == doctest::Approx(-4.0).epsilon(1e-6));
                CHECK(fit.dependence.tau == doctest::Approx(tau).epsilon(1e-6));
                CHECK_FALSE(fit.tau_clamped);
                CHECK(fit.converged);
                CHECK(fit.method == Method::mme);
                CHECK(fit.rho.has_value());
            }
        }
    }
}

TEST_CASE("moment estimator edge handling") {
    const auto [mx, vx] = weibull_mean_var(WeibullParams{1.0, 2.0});
    const auto [my, vy] = family_mean_var(Family::logistic, -4.0, 2.0);

    // zero empirical covariance: tau = 0 without complaint
    const auto flat = mme(moment_design(mx, std::sqrt(vx), my, std::sqrt(vy), 0.0),
                          Family::logistic, Direction::positive);
    CHECK(flat.dependence.tau == 0.0);
    CHECK_FALSE(flat.tau_clamped);

    // covariance with the wrong sign for the direction: clamped to 0
    const auto wrong = mme(moment_design(mx, std::sqrt(vx), my, std::sqrt(vy), -0.2),
                           Family::logistic, Direction::positive);
    CHECK(wrong.dependence.tau == 0.0);
    CHECK(wrong.tau_clamped);

    // covariance too large for the admissible range: clamped to 1
    const auto big = mme(moment_design(mx, std::sqrt(vx), my, std::sqrt(vy), 0.9),
                         Family::logistic, Direction::positive);
    CHECK(big.dependence.tau == 1.0);
    CHECK(big.tau_clamped);

    const auto data = moment_design(mx, std::sqrt(vx), my, std::sqrt(vy), 0.3);
    CHECK_THROWS_AS(mme(data, Family::cauchy, Direction::positive), std::domain_error);
    CHECK_THROWS_AS(mme(data, Family::normal, Direction::positive), std::domain_error);
    CHECK_THROWS_AS(mme(data, Family::gumbel, Direction::negative), std::invalid_argument);
}

TEST_CASE("maximum likelihood recovers the generating parameters (logistic)") {
    const auto data = simulate(sim_model(Family::logistic), 1000, 7);
    const auto ml = mle(data, Family::logistic, Direction::positive);
    CHECK(ml.converged);
    CHECK(std::abs(ml.marginal.alpha - 1.0) < 0.12);
    CHECK(std::abs(ml.dependence.beta - 2.0) < 0.28);
    CHECK(std::abs(ml.marginal.shape - 3.0) < 0.36);
    CHECK(std::abs(ml.dependence.gamma + 4.0) < 0.48);
    CHECK(std::abs(ml.dependence.tau - 0.5) < 0.44);
    CHECK(ml.aic == doctest::Approx(10.0 - 2.0 * ml.loglik).epsilon(1e-14));
    CHECK(ml.method == Method::mle);
    CHECK(ml.rho.has_value());
    CHECK(*ml.rho > 0.0);
    CHECK(*ml.rho < rho_max(Family::logistic, ml.marginal.shape) + 1e-12);

    const auto mm = mme(data, Family::logistic, Direction::positive);
    CHECK(std::abs(mm.marginal.alpha - 1.0) < 0.12);
    CHECK(std::abs(mm.dependence.beta - 2.0) < 0.28);
    CHECK(std::abs(mm.marginal.shape - 3.0) < 0.36);
    CHECK(std::abs(mm.dependence.gamma + 4.0) < 0.48);
    CHECK(std::abs(mm.dependence.tau - 0.5) < 0.44);

    // the likelihood at the MLE dominates the starting value
    CHECK(ml.loglik >= mm.loglik - 1e-9);
}

TEST_CASE("maximum likelihood for the remaining families") {
    const auto gum = mle(simulate(sim_model(Family::gumbel), 1000, 55), Family::gumbel,
                         Direction::positive);
    CHECK(gum.converged);
    CHECK(std::abs(gum.marginal.alpha - 1.0) < 0.12);
    CHECK(std::abs(gum.dependence.beta - 2.0) < 0.3);
    CHECK(std::abs(gum.marginal.shape - 3.0) < 0.4);
    CHECK(std::abs(gum.dependence.gamma + 4.0) < 0.5);
    CHECK(std::abs(gum.dependence.tau - 0.5) < 0.4);

    const auto lap = mle(simulate(sim_model(Family::laplace), 1000, 55), Family::laplace,
                         Direction::positive);
    CHECK(lap.converged);
    CHECK(std::abs(lap.marginal.alpha - 1.0) < 0.12);
    CHECK(std::abs(lap.dependence.beta - 2.0) < 0.3);
    CHECK(std::abs(lap.marginal.shape - 3.0) < 0.4);
    CHECK(std::abs(lap.dependence.gamma + 4.0) < 0.5);
    CHECK(std::abs(lap.dependence.tau - 0.5) < 0.4);

    const auto cau = mle(simulate(sim_model(Family::cauchy), 1000, 101), Family::cauchy,
                         Direction::positive);
    CHECK(cau.converged);
    CHECK(std::abs(cau.marginal.alpha - 1.0) < 0.12);
    CHECK(std::abs(cau.dependence.beta - 2.0) < 0.3);
    CHECK(std::abs(cau.marginal.shape - 3.0) < 0.4);
    CHECK(std::abs(cau.dependence.gamma + 4.0) < 0.6);
    CHECK(std::abs(cau.dependence.tau - 0.5) < 0.4);
    CHECK_FALSE(cau.rho.has_value());

    CHECK_THROWS_AS(mle(simulate(sim_model(Family::logistic), 100, 1), Family::normal,
                        Direction::positive),
                    std::domain_error);
}

TEST_CASE("independent data: joint fit collapses to the factorized fits") {
    const auto indep = sim_model(Family::logistic, 0.0);
    const auto data = simulate(indep, 500, 15);
    const auto mom = compute_moments(data);
    REQUIRE(mom.cov_xy < 0.0); // chosen so the boundary tau = 0 is optimal

    const auto fit = mle(data, Family::logistic, Direction::positive);
    CHECK(fit.dependence.tau <= 0.01);

    // oracle: a 2-parameter Weibull fit on x plus a location-scale fit on y
    auto obj_x = [&](const std::vector<double>& u) {
        const WeibullParams w{std::exp(u[0]), std::exp(u[1])};
        if (!std::isfinite(w.alpha) || !std::isfinite(w.shape)) return 1e300;
        double s = 0.0;
        for (const auto& o : data) {
            const double lx = std::log(weibull_density(w, o.x));
            s += std::isfinite(lx) ? lx : -1e300;
        }
        return -s;
    };
    auto obj_y = [&](const std::vector<double>& u) {
        const double b = std::exp(u[0]);
        if (!std::isfinite(b)) return 1e300;
        double s = 0.0;
        for (const auto& o : data)
            s += family_log_density(Family::logistic, (o.y - u[1]) / b) - std::log(b);
        return -s;
    };
    const auto rx = minimize_simplex(obj_x, {0.0, 1.0});
    const auto ry = minimize_simplex(obj_y, {0.5, mom.mean_y});
    const double factorized = -(rx.value + ry.value);
    CHECK(std::abs(fit.loglik - factorized) <= 1e-6);
}

TEST_CASE("fingerprints are order-independent and guard the ranking") {
    auto data = simulate(sim_model(Family::laplace), 300, 9);
    const auto fp = data_fingerprint(data);
    auto shuffled = data;
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[3], shuffled[77]);
    CHECK(data_fingerprint(shuffled) == fp);

    auto altered = data;
    altered[0].y += 1e-9;
    CHECK(data_fingerprint(altered) != fp);

    const auto f1 = mle(data, Family::laplace, Direction::positive);
    const auto f2 = mle(shuffled, Family::logistic, Direction::positive);
    CHECK_NOTHROW(aic_compare(std::array{f1, f2}));
    const auto f3 = mle(altered, Family::logistic, Direction::positive);
    CHECK_THROWS_AS(aic_compare(std::array{f1, f3}), std::invalid_argument);
}

TEST_CASE("aic ranking arithmetic") {
    FitResult a{};
    FitResult b{};
    a.aic = 10.0 - 2.0 * 10.0;  // loglik 10
    b.aic = 10.0 - 2.0 * 12.0;  // loglik 12
    const auto rank = aic_compare(std::array{a, b});
    CHECK(a.aic == -10.0);
    CHECK(b.aic == -14.0);
    CHECK(rank.selected == 1);
    REQUIRE(rank.order.size() == 2);
    CHECK(rank.order[0] == 1);
    CHECK(rank.order[1] == 0);

    const auto solo = aic_compare(std::array{a});
    CHECK(solo.selected == 0);
    CHECK_THROWS_AS(aic_compare(std::vector<FitResult>{}), std::invalid_argument);
}

TEST_CASE("model selection is invariant to row order") {
    const auto data = simulate(sim_model(Family::laplace), 600, 21);
    auto shuffled = data;
    std::reverse(shuffled.begin(), shuffled.end());
    auto rank_of = [](const std::vector<Observation>& d) {
        std::vector<FitResult> fits;
        for (Family k : {Family::logistic, Family::laplace, Family::cauchy})
            fits.push_back(mle(d, k, Direction::positive));
        return fits[aic_compare(fits).selected].family;
    };
    CHECK(rank_of(data) == rank_of(shuffled));
}

TEST_CASE("wald interval") {
    const auto [lo, hi] = wald_ci(0.503, 0.094, 0.95);
    CHECK(lo == doctest::Approx(0.31876338545323493).epsilon(1e-9));
    CHECK(hi == doctest::Approx(0.68723661454676503).epsilon(1e-9));
    const auto [l2, h2] = wald_ci(0.0, 1.0, 0.5);
    CHECK(h2 == doctest::Approx(0.6744897501960817).epsilon(1e-8));
    CHECK(l2 == doctest::Approx(-h2).epsilon(1e-12));
    CHECK_THROWS_AS(wald_ci(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(wald_ci(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(wald_ci(0.0, -0.1, 0.9), std::invalid_argument);
}

TEST_CASE("estimates tighten with sample size") {
    auto l1_error = [](const FitResult& f) {
        return std::abs(f.marginal.alpha - 1.0) + std::abs(f.dependence.beta - 2.0) +
               std::abs(f.marginal.shape - 3.0) + std::abs(f.dependence.gamma + 4.0) +
               std::abs(f.dependence.tau - 0.5);
    };
    const auto truth = sim_model(Family::logistic);
    std::vector<double> small, large;
    for (std::uint64_t r = 0; r < 30; ++r) {
        small.push_back(
            l1_error(mle(simulate(truth, 100, derive_seed(777, 100, r)), Family::logistic,
                         Direction::positive)));
        large.push_back(
            l1_error(mle(simulate(truth, 1000, derive_seed(777, 1000, r)), Family::logistic,
                         Direction::positive)));
    }
    std::sort(small.begin(), small.end());
    std::sort(large.begin(), large.end());
    CHECK(large[15] < small[15]);
}

TEST_CASE("method names") {
    CHECK(std::string(method_name(Method::mme)) == "mme");
    CHECK(std::string(method_name(Method::mle)) == "mle");
}
