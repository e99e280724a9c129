#include "afc/cli.hpp"

#include "afc/csv.hpp"
#include "afc/estimation.hpp"
#include "afc/model.hpp"
#include "afc/quadrature.hpp"
#include "afc/sampler.hpp"
#include "afc/sim_study.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace afc {

namespace {

struct ModelOptions {
    double alpha = 1.0;
    double beta = 1.0;
    double shape = 1.0;
    double gamma = 0.0;
    double tau = 0.0;
    std::string family;
    std::string direction = "pos";
};

void add_model_options(CLI::App* cmd, ModelOptions& m, const std::string& family_help) {
    cmd->add_option("--alpha", m.alpha, "weibull inverse scale (> 0)")->capture_default_str();
    cmd->add_option("--beta", m.beta, "response scale (> 0)")->capture_default_str();
    cmd->add_option("--lambda", m.shape, "weibull shape (> 0)")->capture_default_str();
    cmd->add_option("--gamma", m.gamma, "response location")->capture_default_str();
    cmd->add_option("--tau", m.tau, "dependence strength in [0, 1]")->capture_default_str();
    cmd->add_option("--family", m.family, family_help)->required();
    cmd->add_option("--direction", m.direction, "dependence direction")->capture_default_str();
}

Direction parse_direction(const std::string& s) {
    if (s == "pos") return Direction::positive;
    if (s == "neg") return Direction::negative;
    throw std::invalid_argument("direction must be pos or neg, got '" + s + "'");
}

AfcModel build_model(const ModelOptions& m) {
    return AfcModel(family_from_string(m.family), {m.alpha, m.shape},
                    {m.beta, m.gamma, m.tau, parse_direction(m.direction)});
}

std::string table_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%11.5f", v);
    return buf;
}

// ---------------------------------------------------------------- fit ----

struct FitOptions {
    std::string data;
    std::string family;
    std::string direction = "auto";
    bool drop_bad_rows = false;
    std::string out;
    std::string format = "csv";
};

struct FamilyFits {
    Family family;
    std::optional<FitResult> moments;
    FitResult likelihood;
    bool selected = false;
};

void check_format(const std::string& format) {
    if (format != "csv" && format != "json")
        throw std::invalid_argument("format must be csv or json, got '" + format + "'");
}

std::string fit_csv(const std::vector<FamilyFits>& all) {
    std::string out = "family,parameter,mme,mle,aic,selected\n";
    for (const auto& ff : all) {
        const auto mme_value = [&](std::size_t p) -> std::string {
            if (!ff.moments) return "";
            const std::array<double, 6> v{
                ff.moments->marginal.alpha, ff.moments->dependence.beta,
                ff.moments->marginal.shape, ff.moments->dependence.gamma,
                ff.moments->dependence.tau,
                ff.moments->rho ? *ff.moments->rho : std::nan("")};
            return std::isnan(v[p]) ? std::string() : format_double(v[p]);
        };
        const std::array<double, 6> mle_v{
            ff.likelihood.marginal.alpha, ff.likelihood.dependence.beta,
            ff.likelihood.marginal.shape, ff.likelihood.dependence.gamma,
            ff.likelihood.dependence.tau,
            ff.likelihood.rho ? *ff.likelihood.rho : std::nan("")};
        for (std::size_t p = 0; p < 6; ++p) {
            if (std::isnan(mle_v[p]) && mme_value(p).empty()) continue; // no rho for cauchy
            out += family_name(ff.family);
            out += ',';
            out += study_parameters[p];
            out += ',';
            out += mme_value(p);
            out += ',';
            out += std::isnan(mle_v[p]) ? std::string() : format_double(mle_v[p]);
            out += ',';
            out += format_double(ff.likelihood.aic);
            out += ',';
            out += ff.selected ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

std::string fit_json(const std::vector<FamilyFits>& all, Direction dir) {
    auto params = [](const FitResult& f) {
        nlohmann::ordered_json p{{"alpha", f.marginal.alpha},
                                 {"beta", f.dependence.beta},
                                 {"lambda", f.marginal.shape},
                                 {"gamma", f.dependence.gamma},
                                 {"tau", f.dependence.tau}};
        if (f.rho) p["rho"] = *f.rho;
        p["loglik"] = f.loglik;
        p["converged"] = f.converged;
        p["tau_clamped"] = f.tau_clamped;
        return p;
    };
    nlohmann::ordered_json doc;
    doc["direction"] = direction_name(dir);
    doc["fits"] = nlohmann::ordered_json::array();
    for (const auto& ff : all) {
        nlohmann::ordered_json entry;
        entry["family"] = family_name(ff.family);
        entry["mme"] = ff.moments ? params(*ff.moments) : nlohmann::ordered_json(nullptr);
        entry["mle"] = params(ff.likelihood);
        entry["aic"] = ff.likelihood.aic;
        entry["selected"] = ff.selected;
        doc["fits"].push_back(entry);
    }
    return doc.dump(2) + "\n";
}

int run_fit(const FitOptions& opts) {
    check_format(opts.format);
    std::size_t dropped = 0;
    const std::vector<Observation> data =
        read_observations_csv(opts.data, opts.drop_bad_rows, &dropped);
    if (data.size() < 10)
        throw std::runtime_error("need at least 10 usable rows, got " +
                                 std::to_string(data.size()));

    Direction dir;
    if (opts.direction == "auto") {
        dir = compute_moments(data).cov_xy < 0.0 ? Direction::negative : Direction::positive;
        std::printf("direction: auto -> %s\n", direction_name(dir));
    } else {
        dir = parse_direction(opts.direction);
        std::printf("direction: %s\n", direction_name(dir));
    }
    if (dropped > 0) std::printf("dropped %zu bad row(s)\n", dropped);
    std::printf("n = %zu\n", data.size());

    std::vector<Family> families;
    if (opts.family == "all") {
        families = {Family::logistic, Family::laplace, Family::cauchy};
        if (dir == Direction::positive)
            families.push_back(Family::gumbel);
        else
            std::printf("gumbel: skipped (needs positive direction)\n");
    } else {
        families = {family_from_string(opts.family)};
    }

    std::vector<FamilyFits> all;
    std::vector<FitResult> mle_fits;
    for (Family k : families) {
        FamilyFits ff{k, std::nullopt, mle(data, k, dir), false};
        if (k != Family::cauchy) ff.moments = mme(data, k, dir);
        mle_fits.push_back(ff.likelihood);
        all.push_back(std::move(ff));
    }
    const AicRanking ranking = aic_compare(mle_fits);
    all[ranking.selected].selected = true;

    for (const auto& ff : all) {
        std::printf("\n%s%s\n", family_name(ff.family), ff.selected ? "  [selected]" : "");
        std::printf("  %-9s %12s %12s\n", "parameter", "mme", "mle");
        const std::array<double, 6> mle_v{
            ff.likelihood.marginal.alpha, ff.likelihood.dependence.beta,
            ff.likelihood.marginal.shape, ff.likelihood.dependence.gamma,
            ff.likelihood.dependence.tau,
            ff.likelihood.rho ? *ff.likelihood.rho : std::nan("")};
        for (std::size_t p = 0; p < 6; ++p) {
            std::string mme_col = "-";
            if (ff.moments) {
                const std::array<double, 6> v{
                    ff.moments->marginal.alpha, ff.moments->dependence.beta,
                    ff.moments->marginal.shape, ff.moments->dependence.gamma,
                    ff.moments->dependence.tau,
                    ff.moments->rho ? *ff.moments->rho : std::nan("")};
                if (!std::isnan(v[p])) mme_col = table_number(v[p]);
            }
            if (std::isnan(mle_v[p]) && mme_col == "-") continue;
            std::printf("  %-9s %12s %12s\n", study_parameters[p], mme_col.c_str(),
                        std::isnan(mle_v[p]) ? "-" : table_number(mle_v[p]).c_str());
        }
        std::printf("  aic: %.4f  (loglik %.4f, %s)\n", ff.likelihood.aic,
                    ff.likelihood.loglik, ff.likelihood.converged ? "converged" : "NOT converged");
        if (ff.moments && ff.moments->tau_clamped)
            std::printf("  note: mme tau was clamped into [0, 1]\n");
    }
    std::printf("\nselected by aic: %s\n", family_name(all[ranking.selected].family));

    if (!opts.out.empty()) {
        write_text_file(opts.out, opts.format == "csv" ? fit_csv(all) : fit_json(all, dir));
        std::printf("wrote %s\n", opts.out.c_str());
    }
    return 0;
}

// ------------------------------------------------------------- sample ----

struct SampleOptions {
    ModelOptions model;
    std::size_t n = 1000;
    std::optional<std::size_t> burn_in;
    std::size_t thin = 5;
    std::uint64_t seed = 1;
    std::string out;
};

int run_sample(const SampleOptions& opts) {
    const AfcModel model = build_model(opts.model);
    ChainConfig cfg;
    cfg.n_draws = opts.n;
    cfg.burn_in = opts.burn_in;
    cfg.thin = opts.thin;
    cfg.seed = opts.seed;
    const ChainOutput chain = run_chain(model, cfg);
    write_observations_csv(opts.out, chain.draws);
    std::printf("draws: %zu  (burn-in %zu, thin %zu, seed %" PRIu64 ")\n", chain.draws.size(),
                cfg.burn_in.value_or(opts.n * opts.thin / 9), opts.thin, opts.seed);
    std::printf("acceptance_rate: %s\n", format_double(chain.acceptance_rate).c_str());
    std::printf("sample_pearson: %s\n", format_double(pearson(chain.draws)).c_str());
    std::printf("wrote %s\n", opts.out.c_str());
    return 0;
}

// --------------------------------------------------------------- grid ----

struct GridOptions {
    ModelOptions model;
    double x_min = 0.0; // 0 means "use the default quantile window"
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    bool y_set = false;
    std::size_t nx = 50;
    std::size_t ny = 50;
    std::string out;
};

int run_grid(const GridOptions& opts) {
    const AfcModel model = build_model(opts.model);
    double x_lo = opts.x_min, x_hi = opts.x_max;
    if (x_lo == 0.0 && x_hi == 0.0) {
        x_lo = weibull_quantile(model.marginal(), 0.001);
        x_hi = weibull_quantile(model.marginal(), 0.999);
    }
    if (!(x_lo > 0.0) || !(x_hi > x_lo))
        throw std::invalid_argument("grid needs 0 < x-min < x-max");
    double y_lo = opts.y_min, y_hi = opts.y_max;
    if (!opts.y_set) {
        const double spread =
            (model.family() == Family::cauchy ? 40.0 : 8.0) * model.dependence().beta;
        y_lo = model.dependence().gamma - spread;
        y_hi = model.dependence().gamma + spread;
    }
    if (!(y_hi > y_lo)) throw std::invalid_argument("grid needs y-min < y-max");
    if (opts.nx < 2 || opts.ny < 2) throw std::invalid_argument("grid needs nx, ny >= 2");

    std::string csv = "x,y,density\n";
    for (std::size_t i = 0; i < opts.nx; ++i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                                    static_cast<double>(opts.nx - 1);
        for (std::size_t j = 0; j < opts.ny; ++j) {
            const double y = y_lo + (y_hi - y_lo) * static_cast<double>(j) /
                                        static_cast<double>(opts.ny - 1);
            csv += format_double(x);
            csv += ',';
            csv += format_double(y);
            csv += ',';
            csv += format_double(model.joint_density(x, y));
            csv += '\n';
        }
    }
    write_text_file(opts.out, csv);
    std::printf("wrote %zu cells to %s\n", opts.nx * opts.ny, opts.out.c_str());
    return 0;
}

// ----------------------------------------------------------- simstudy ----

struct StudyOptions {
    ModelOptions model;
    std::vector<std::size_t> sizes{100, 1000};
    std::size_t replicates = 200;
    std::vector<std::string> methods;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

int run_simstudy(const StudyOptions& opts) {
    check_format(opts.format);
    StudyDesign design{build_model(opts.model), opts.sizes, opts.replicates, {}, opts.seed};
    if (opts.methods.empty()) {
        design.methods = design.truth.family() == Family::cauchy
                             ? std::vector<Method>{Method::mle}
                             : std::vector<Method>{Method::mme, Method::mle};
    } else {
        for (const auto& name : opts.methods) {
            if (name == "mme")
                design.methods.push_back(Method::mme);
            else if (name == "mle")
                design.methods.push_back(Method::mle);
            else
                throw std::invalid_argument("unknown method '" + name + "'");
        }
    }

    const StudyReport report = run_study(design);
    std::size_t current_n = 0;
    Method current_m{};
    bool first = true;
    for (const auto& row : report.rows) {
        if (first || row.n != current_n || row.method != current_m) {
            std::printf("\nn = %zu, method = %s  (pearson_mean %.4f, failed %zu)\n", row.n,
                        method_name(row.method), row.pearson_mean, row.n_failed);
            std::printf("  %-9s %11s %11s %23s\n", "parameter", "mean", "se", "ci");
            current_n = row.n;
            current_m = row.method;
            first = false;
        }
        std::printf("  %-9s %s %s [%s, %s]\n", row.parameter.c_str(),
                    table_number(row.mean).c_str(), table_number(row.se).c_str(),
                    table_number(row.ci_lo).c_str(), table_number(row.ci_hi).c_str());
    }
    for (const auto& warning : report.warnings) std::printf("warning: %s\n", warning.c_str());

    if (!opts.out.empty()) {
        if (opts.format == "csv")
            write_study_csv(opts.out, report);
        else
            write_study_json(opts.out, report);
        std::printf("\nwrote %s\n", opts.out.c_str());
    }
    return 0;
}

// -------------------------------------------------------------- check ----

int run_check(const ModelOptions& opts) {
    const AfcModel model = build_model(opts);
    bool all_pass = true;
    auto report = [&](const char* name, bool pass, const std::string& detail) {
        std::printf("check %-16s %s  (%s)\n", name, pass ? "PASS" : "FAIL", detail.c_str());
        all_pass = all_pass && pass;
    };

    const ValidityReport validity = validate(model, default_grid(model));
    report("validity-grid", validity.ok(),
           "min density " + format_double(validity.min_density) + " at x=" +
               format_double(validity.argmin_x) + ", y=" + format_double(validity.argmin_y) +
               ", " + std::to_string(validity.negative_count) + " negative of " +
               std::to_string(validity.n_points));

    const double x0 = weibull_quantile(model.marginal(), 0.5);
    const double residual = shift_identity_residual(
        model.family(), model.dependence().beta, model.mu(x0), model.dependence().gamma);
    report("shift-identity", residual <= 1e-6, "residual " + format_double(residual));

    if (model.family() == Family::cauchy) {
        std::printf("check %-16s SKIP  (moments undefined)\n", "hoeffding");
    } else {
        const double numeric = hoeffding_covariance(model);
        const double closed = model.covariance();
        report("hoeffding", std::abs(numeric - closed) <= 1e-4,
               "numeric " + format_double(numeric) + " vs closed form " +
                   format_double(closed));
    }
    return all_pass ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"bivariate accelerated-failure conditional models"};
    app.require_subcommand(1);

    FitOptions fit_opts;
    auto* fit_cmd = app.add_subcommand("fit", "fit families to an x,y dataset");
    fit_cmd->add_option("--data", fit_opts.data, "input CSV with header x,y")->required();
    fit_cmd->add_option("--family", fit_opts.family,
                        "logistic|gumbel|laplace|cauchy|all")->required();
    fit_cmd->add_option("--direction", fit_opts.direction, "pos|neg|auto")
        ->capture_default_str();
    fit_cmd->add_flag("--drop-bad-rows", fit_opts.drop_bad_rows,
                      "skip malformed rows instead of failing");
    fit_cmd->add_option("--out", fit_opts.out, "write parameter table here");
    fit_cmd->add_option("--format", fit_opts.format, "csv|json")->capture_default_str();

    SampleOptions sample_opts;
    auto* sample_cmd = app.add_subcommand("sample", "draw from a model via MCMC");
    add_model_options(sample_cmd, sample_opts.model, "logistic|gumbel|laplace|cauchy|normal");
    sample_cmd->add_option("--n", sample_opts.n, "number of retained draws")
        ->capture_default_str();
    std::size_t burn_in_flag = 0;
    auto* burn_opt = sample_cmd->add_option("--burn-in", burn_in_flag,
                                            "discarded steps (default: ~10% of the run)");
    sample_cmd->add_option("--thin", sample_opts.thin, "keep every thin-th step")
        ->capture_default_str();
    sample_cmd->add_option("--seed", sample_opts.seed, "rng seed")->capture_default_str();
    sample_cmd->add_option("--out", sample_opts.out, "output CSV path")->required();

    GridOptions grid_opts;
    auto* grid_cmd = app.add_subcommand("grid", "tabulate the joint density on a grid");
    add_model_options(grid_cmd, grid_opts.model, "logistic|gumbel|laplace|cauchy|normal");
    grid_cmd->add_option("--x-min", grid_opts.x_min, "grid lower x (default: 0.001 quantile)");
    grid_cmd->add_option("--x-max", grid_opts.x_max, "grid upper x (default: 0.999 quantile)");
    auto* ymin_opt = grid_cmd->add_option("--y-min", grid_opts.y_min,
                                          "grid lower y (default: location - 8 scale)");
    auto* ymax_opt = grid_cmd->add_option("--y-max", grid_opts.y_max,
                                          "grid upper y (default: location + 8 scale)");
    grid_cmd->add_option("--nx", grid_opts.nx, "grid points along x")->capture_default_str();
    grid_cmd->add_option("--ny", grid_opts.ny, "grid points along y")->capture_default_str();
    grid_cmd->add_option("--out", grid_opts.out, "output CSV path")->required();

    StudyOptions study_opts;
    auto* study_cmd = app.add_subcommand("simstudy", "replicated sample-and-refit experiment");
    add_model_options(study_cmd, study_opts.model, "logistic|gumbel|laplace|cauchy");
    study_cmd->add_option("--sizes", study_opts.sizes, "sample sizes")
        ->delimiter(',')
        ->capture_default_str();
    study_cmd->add_option("--replicates", study_opts.replicates, "replicates per size")
        ->capture_default_str();
    study_cmd->add_option("--methods", study_opts.methods, "subset of mme,mle")->delimiter(',');
    study_cmd->add_option("--seed", study_opts.seed, "root rng seed")->capture_default_str();
    study_cmd->add_option("--out", study_opts.out, "write the report here");
    study_cmd->add_option("--format", study_opts.format, "csv|json")->capture_default_str();

    ModelOptions check_opts;
    auto* check_cmd = app.add_subcommand("check", "internal-consistency oracles for a model");
    add_model_options(check_cmd, check_opts, "logistic|gumbel|laplace|cauchy|normal");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("afcm");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sample_cmd->parsed()) {
            if (burn_opt->count() > 0) sample_opts.burn_in = burn_in_flag;
            return run_sample(sample_opts);
        }
        if (fit_cmd->parsed()) return run_fit(fit_opts);
        if (grid_cmd->parsed()) {
            grid_opts.y_set = ymin_opt->count() > 0 || ymax_opt->count() > 0;
            if (grid_opts.y_set && (ymin_opt->count() == 0 || ymax_opt->count() == 0))
                throw std::invalid_argument("--y-min and --y-max must be given together");
            return run_grid(grid_opts);
        }
        if (study_cmd->parsed()) return run_simstudy(study_opts);
        if (check_cmd->parsed()) return run_check(check_opts);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

} // namespace afc
