#include "afc/sim_study.hpp"

#include "afc/csv.hpp"
#include "afc/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace afc {

namespace {

constexpr std::size_t chain_burn_in = 2000;
constexpr std::size_t chain_thin = 5;
constexpr double z_975 = 1.959963984540054;

std::array<double, 6> estimate_array(const FitResult& fit) {
    return {fit.marginal.alpha,
            fit.dependence.beta,
            fit.marginal.shape,
            fit.dependence.gamma,
            fit.dependence.tau,
            fit.rho ? *fit.rho : std::numeric_limits<double>::quiet_NaN()};
}

} // namespace

StudyReport run_study(const StudyDesign& design) {
    if (design.sizes.empty()) throw std::invalid_argument("no sample sizes requested");
    for (std::size_t n : design.sizes)
        if (n < 10) throw std::invalid_argument("sample sizes below 10 are not meaningful here");
    if (design.replicates < 2)
        throw std::invalid_argument("need at least 2 replicates to form standard errors");
    if (design.methods.empty()) throw std::invalid_argument("no methods requested");
    for (Method m : design.methods) {
        if (m == Method::mme &&
            (design.truth.family() == Family::cauchy || design.truth.family() == Family::normal))
            throw std::invalid_argument("method of moments is undefined for this family");
    }

    const bool has_rho =
        design.truth.family() != Family::cauchy && design.truth.family() != Family::normal;
    const std::size_t n_params = has_rho ? 6 : 5;

    StudyReport report{design.truth, design.replicates, design.seed, {}, {}, {}};

    for (std::size_t n : design.sizes) {
        // Generate every replicate dataset once, then fit each method on it.
        std::vector<std::vector<Observation>> datasets(design.replicates);
        double pearson_sum = 0.0;
        for (std::size_t r = 0; r < design.replicates; ++r) {
            ChainConfig cfg;
            cfg.n_draws = n;
            cfg.burn_in = chain_burn_in;
            cfg.thin = chain_thin;
            cfg.seed = derive_seed(design.seed, n, r);
            datasets[r] = run_chain(design.truth, cfg).draws;
            pearson_sum += pearson(datasets[r]);
        }
        const double pearson_mean = pearson_sum / static_cast<double>(design.replicates);

        for (Method method : design.methods) {
            StudyRaw raw{n, method, {}};
            raw.estimates.reserve(design.replicates);
            std::size_t failed = 0;
            for (std::size_t r = 0; r < design.replicates; ++r) {
                try {
                    const FitResult fit =
                        method == Method::mme
                            ? mme(datasets[r], design.truth.family(),
                                  design.truth.dependence().direction)
                            : mle(datasets[r], design.truth.family(),
                                  design.truth.dependence().direction);
                    if (!fit.converged) {
                        ++failed;
                        continue;
                    }
                    raw.estimates.push_back(estimate_array(fit));
                } catch (const std::exception&) {
                    ++failed;
                }
            }
            const std::size_t kept = raw.estimates.size();
            if (kept < 2)
                throw std::runtime_error("fewer than 2 replicates survived fitting at n = " +
                                         std::to_string(n));
            if (failed * 20 > design.replicates)
                report.warnings.push_back(std::string("failure rate above 5% for ") +
                                          method_name(method) + " at n = " + std::to_string(n));

            for (std::size_t p = 0; p < n_params; ++p) {
                double sum = 0.0;
                for (const auto& est : raw.estimates) sum += est[p];
                const double mean = sum / static_cast<double>(kept);
                double ss = 0.0;
                for (const auto& est : raw.estimates) {
                    const double d = est[p] - mean;
                    ss += d * d;
                }
                const double se = std::sqrt(ss / static_cast<double>(kept - 1));
                report.rows.push_back({n, method, study_parameters[p], mean, se,
                                       mean - z_975 * se, mean + z_975 * se, pearson_mean,
                                       failed});
            }
            report.raw.push_back(std::move(raw));
        }
    }
    return report;
}

double se_ratio(const StudyReport& report, std::size_t n_small, std::size_t n_large) {
    std::vector<double> ratios;
    for (const auto& row : report.rows) {
        if (row.n != n_small) continue;
        for (const auto& other : report.rows) {
            if (other.n == n_large && other.method == row.method &&
                other.parameter == row.parameter) {
                if (!(other.se > 0.0))
                    throw std::domain_error("degenerate standard error at the larger size");
                ratios.push_back(row.se / other.se);
            }
        }
    }
    if (ratios.empty())
        throw std::invalid_argument("report does not contain both requested sizes");
    std::sort(ratios.begin(), ratios.end());
    const std::size_t m = ratios.size();
    return m % 2 == 1 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
}

std::string study_csv(const StudyReport& report) {
    std::string out = "n,method,parameter,mean,se,ci_lo,ci_hi,pearson_mean,n_failed\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.n);
        out += ',';
        out += method_name(row.method);
        out += ',';
        out += row.parameter;
        out += ',';
        out += format_double(row.mean);
        out += ',';
        out += format_double(row.se);
        out += ',';
        out += format_double(row.ci_lo);
        out += ',';
        out += format_double(row.ci_hi);
        out += ',';
        out += format_double(row.pearson_mean);
        out += ',';
        out += std::to_string(row.n_failed);
        out += '\n';
    }
    return out;
}

std::string study_json(const StudyReport& report) {
    nlohmann::ordered_json doc;
    const auto& truth = report.truth;
    doc["truth"] = {{"family", family_name(truth.family())},
                    {"alpha", truth.marginal().alpha},
                    {"beta", truth.dependence().beta},
                    {"lambda", truth.marginal().shape},
                    {"gamma", truth.dependence().gamma},
                    {"tau", truth.dependence().tau},
                    {"direction", direction_name(truth.dependence().direction)}};
    doc["replicates"] = report.replicates;
    doc["seed"] = report.seed;
    doc["warnings"] = report.warnings;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        doc["rows"].push_back({{"n", row.n},
                               {"method", method_name(row.method)},
                               {"parameter", row.parameter},
                               {"mean", row.mean},
                               {"se", row.se},
                               {"ci_lo", row.ci_lo},
                               {"ci_hi", row.ci_hi},
                               {"pearson_mean", row.pearson_mean},
                               {"n_failed", row.n_failed}});
    }
    return doc.dump(2) + "\n";
}

void write_study_csv(const std::string& path, const StudyReport& report) {
    write_text_file(path, study_csv(report));
}

void write_study_json(const std::string& path, const StudyReport& report) {
    write_text_file(path, study_json(report));
}

} // namespace afc
