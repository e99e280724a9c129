#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "afc/sim_study.hpp"

#include <cmath>
#include <sstream>

using namespace afc;

namespace {

AfcModel sim_model(Family k) {
    return AfcModel(k, WeibullParams{1.0, 3.0}, DependenceSpec{2.0, -4.0, 0.5, Direction::positive});
}

StudyDesign tiny_design() {
    StudyDesign d{sim_model(Family::logistic), {60}, 3, {Method::mme, Method::mle}, 4242};
    return d;
}

double truth_value(const std::string& parameter, const AfcModel& truth) {
    if (parameter == "alpha") return truth.marginal().alpha;
    if (parameter == "beta") return truth.dependence().beta;
    if (parameter == "lambda") return truth.marginal().shape;
    if (parameter == "gamma") return truth.dependence().gamma;
    if (parameter == "tau") return truth.dependence().tau;
    return truth.correlation();
}

} // namespace

TEST_CASE("study runs are deterministic") {
    const auto a = run_study(tiny_design());
    const auto b = run_study(tiny_design());
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].n == b.rows[i].n);
        CHECK(a.rows[i].method == b.rows[i].method);
        CHECK(a.rows[i].parameter == b.rows[i].parameter);
        CHECK(a.rows[i].mean == b.rows[i].mean);
        CHECK(a.rows[i].se == b.rows[i].se);
        CHECK(a.rows[i].ci_lo == b.rows[i].ci_lo);
        CHECK(a.rows[i].ci_hi == b.rows[i].ci_hi);
        CHECK(a.rows[i].pearson_mean == b.rows[i].pearson_mean);
    }
    CHECK(study_csv(a) == study_csv(b));
    CHECK(study_json(a) == study_json(b));
}

TEST_CASE("row layout: sizes, then methods, then parameters") {
    StudyDesign d{sim_model(Family::logistic), {60, 120}, 3, {Method::mme, Method::mle}, 7};
    const auto rep = run_study(d);
    REQUIRE(rep.rows.size() == 2 * 2 * 6);
    std::size_t i = 0;
    for (std::size_t n : {60, 120}) {
        for (Method m : {Method::mme, Method::mle}) {
            for (const char* p : study_parameters) {
                CHECK(rep.rows[i].n == n);
                CHECK(rep.rows[i].method == m);
                CHECK(rep.rows[i].parameter == p);
                ++i;
            }
        }
    }
    CHECK(rep.raw.size() == 4);
}

TEST_CASE("confidence intervals bracket the mean symmetrically") {
    const auto rep = run_study(tiny_design());
    for (const auto& row : rep.rows) {
        CHECK(row.ci_lo <= row.mean);
        CHECK(row.mean <= row.ci_hi);
        CHECK(row.ci_hi - row.mean ==
              doctest::Approx(1.959963984540054 * row.se).epsilon(1e-12));
        CHECK(row.se >= 0.0);
    }
}

TEST_CASE("design validation") {
    StudyDesign d = tiny_design();
    d.replicates = 1;
    CHECK_THROWS_AS(run_study(d), std::invalid_argument);
    d = tiny_design();
    d.sizes = {};
    CHECK_THROWS_AS(run_study(d), std::invalid_argument);
    d = tiny_design();
    d.sizes = {9};
    CHECK_THROWS_AS(run_study(d), std::invalid_argument);
    d = tiny_design();
    d.methods = {};
    CHECK_THROWS_AS(run_study(d), std::invalid_argument);
    d = tiny_design();
    d.truth = sim_model(Family::cauchy);
    CHECK_THROWS_AS(run_study(d), std::invalid_argument); // no moment estimator
    d.methods = {Method::mle};
    CHECK_NOTHROW(run_study(d));
}

TEST_CASE("cauchy studies skip the correlation row") {
    StudyDesign d{sim_model(Family::cauchy), {60}, 3, {Method::mle}, 99};
    const auto rep = run_study(d);
    REQUIRE(rep.rows.size() == 5);
    for (const auto& row : rep.rows) CHECK(row.parameter != "rho");
    REQUIRE(rep.raw.size() == 1);
    for (const auto& est : rep.raw.front().estimates) CHECK(std::isnan(est[5]));
}

TEST_CASE("se ratio compares the right sizes") {
    StudyDesign d{sim_model(Family::logistic), {60, 240}, 6, {Method::mme}, 11};
    const auto rep = run_study(d);
    const double ratio = se_ratio(rep, 60, 240);
    CHECK(ratio > 1.0);
    CHECK(ratio < 10.0);
    CHECK_THROWS_AS(se_ratio(rep, 60, 999), std::invalid_argument);
    CHECK_THROWS_AS(se_ratio(rep, 999, 240), std::invalid_argument);
}

TEST_CASE("csv and json serializations") {
    const auto rep = run_study(tiny_design());
    const std::string csv = study_csv(rep);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n,method,parameter,mean,se,ci_lo,ci_hi,pearson_mean,n_failed");
    std::size_t body = 0;
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty()) ++body;
    }
    CHECK(body == rep.rows.size());

    const std::string json = study_json(rep);
    CHECK(json.find("\"replicates\": 3") != std::string::npos);
    CHECK(json.find("\"seed\": 4242") != std::string::npos);
    CHECK(json.find("\"rows\"") != std::string::npos);
    CHECK(json.find("\"parameter\": \"alpha\"") != std::string::npos);
    CHECK(json.back() == '\n');
}

TEST_CASE("moderate study recovers the truth within its own intervals") {
    StudyDesign d{sim_model(Family::logistic), {500}, 120, {Method::mle}, 314};
    const auto rep = run_study(d);
    std::size_t inside = 0;
    std::size_t total = 0;
    for (const auto& row : rep.rows) {
        CHECK(row.n_failed == 0);
        const double truth = truth_value(row.parameter, d.truth);
        // the cell CI is for the mean estimate, so widen back to one replicate SD
        const double z = 1.959963984540054;
        const double spread = z * row.se;
        ++total;
        if (truth >= row.mean - spread && truth <= row.mean + spread) ++inside;
    }
    CHECK(total == 6);
    CHECK(inside >= 5);

    // relative bias stays small at this scale
    for (const auto& row : rep.rows) {
        const double truth = truth_value(row.parameter, d.truth);
        CHECK(std::abs(row.mean - truth) < 0.12 * std::max(1.0, std::abs(truth)));
    }
}

TEST_CASE("errors shrink as the sample grows") {
    StudyDesign d{sim_model(Family::laplace), {100, 1000}, 40, {Method::mle}, 2718};
    const auto rep = run_study(d);
    std::size_t closer = 0;
    std::size_t total = 0;
    for (const char* p : {"alpha", "beta", "lambda", "gamma", "tau"}) {
        double err_small = 0.0, err_large = 0.0, se_small = 0.0, se_large = 0.0;
        for (const auto& row : rep.rows) {
            if (row.parameter != p) continue;
            const double truth = truth_value(p, d.truth);
            if (row.n == 100) {
                err_small = std::abs(row.mean - truth);
                se_small = row.se;
            } else {
                err_large = std::abs(row.mean - truth);
                se_large = row.se;
            }
        }
        ++total;
        if (err_large <= err_small) ++closer;
        CHECK(se_large < se_small); // dispersion must shrink with n
    }
    CHECK(total == 5);
    CHECK(closer >= 4);
    const double ratio = se_ratio(rep, 100, 1000);
    CHECK(ratio > 1.8);
    CHECK(ratio < 6.0);
}
