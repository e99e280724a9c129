#include "afc/estimation.hpp"

#include "afc/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace afc {

namespace {

void check_data(std::span<const Observation> data, std::size_t min_n) {
    if (data.size() < min_n)
        throw std::invalid_argument("need at least " + std::to_string(min_n) + " observations");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!(std::isfinite(data[i].x) && data[i].x > 0.0) || !std::isfinite(data[i].y))
            throw std::invalid_argument("observation " + std::to_string(i) +
                                        " is outside the support");
    }
}

// Squared coefficient of variation of a Weibull with shape lambda; strictly
// decreasing in lambda.
double weibull_cv2(double shape) {
    const double g1 = std::tgamma(1.0 + 1.0 / shape);
    const double g2 = std::tgamma(1.0 + 2.0 / shape);
    return g2 / (g1 * g1) - 1.0;
}

constexpr double shape_lo = 0.05;
constexpr double shape_hi = 50.0;

// Solves weibull_cv2(shape) = target by bisection on log(shape).
std::pair<double, int> invert_cv2(double target) {
    if (!(target > 0.0)) throw std::invalid_argument("x-moments give a nonpositive cv^2");
    if (target > weibull_cv2(shape_lo) || target < weibull_cv2(shape_hi))
        throw std::invalid_argument("x-moments give a cv^2 outside the supported shape range");
    double lo = std::log(shape_lo), hi = std::log(shape_hi);
    int iterations = 0;
    while (hi - lo > 1e-14 && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        (weibull_cv2(std::exp(mid)) > target ? lo : hi) = mid;
        ++iterations;
    }
    return {std::exp(0.5 * (lo + hi)), iterations};
}

double sorted_quantile(std::vector<double>& values, double p) {
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < values.size() ? values[i] + frac * (values[i + 1] - values[i])
                                 : values.back();
}

constexpr double tau_floor = 1e-3;

double logit(double p) { return std::log(p / (1.0 - p)); }
double inv_logit(double u) { return 1.0 / (1.0 + std::exp(-u)); }

std::optional<double> implied_rho(const AfcModel& m) {
    if (m.family() == Family::cauchy || m.family() == Family::normal) return std::nullopt;
    return m.correlation();
}

} // namespace

SampleMoments compute_moments(std::span<const Observation> data) {
    check_data(data, 2);
    const double n = static_cast<double>(data.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& o : data) {
        sx += o.x;
        sy += o.y;
    }
    const double mx = sx / n, my = sy / n;
    double vx = 0.0, vy = 0.0, cxy = 0.0;
    for (const auto& o : data) {
        const double dx = o.x - mx, dy = o.y - my;
        vx += dx * dx;
        vy += dy * dy;
        cxy += dx * dy;
    }
    return {data.size(), mx, my, vx / n, vy / n, cxy / n};
}

double pearson(std::span<const Observation> data) {
    const auto m = compute_moments(data);
    if (!(m.var_x > 0.0 && m.var_y > 0.0))
        throw std::domain_error("pearson correlation needs non-degenerate coordinates");
    return m.cov_xy / std::sqrt(m.var_x * m.var_y);
}

const char* method_name(Method m) { return m == Method::mme ? "mme" : "mle"; }

std::uint64_t data_fingerprint(std::span<const Observation> data) {
    auto hash64 = [](std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdULL;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ULL;
        return z ^ (z >> 33);
    };
    std::uint64_t sum = 0; // commutative, so permutations digest identically
    for (const auto& o : data)
        sum += hash64(std::bit_cast<std::uint64_t>(o.x) * 3 +
                      hash64(std::bit_cast<std::uint64_t>(o.y)));
    return hash64(sum ^ (static_cast<std::uint64_t>(data.size()) << 1));
}

FitResult mme(std::span<const Observation> data, Family k, Direction direction) {
    if (k == Family::cauchy || k == Family::normal)
        throw std::domain_error("method of moments is undefined for this family");
    if (k == Family::gumbel && direction == Direction::negative)
        throw std::invalid_argument("the gumbel family admits only the positive direction");
    const auto m = compute_moments(data);
    if (!(m.mean_x > 0.0 && m.var_x > 0.0 && m.var_y > 0.0))
        throw std::invalid_argument("degenerate sample moments");

    const auto [shape, iterations] = invert_cv2(m.var_x / (m.mean_x * m.mean_x));
    const double g1 = std::tgamma(1.0 + 1.0 / shape);
    const double alpha = g1 / m.mean_x;

    constexpr double pi = 3.141592653589793238462643383279502884;
    double beta = 0.0, gamma = 0.0;
    switch (k) {
        case Family::logistic:
            beta = std::sqrt(3.0 * m.var_y) / pi;
            gamma = m.mean_y;
            break;
        case Family::gumbel:
            beta = std::sqrt(6.0 * m.var_y) / pi;
            gamma = m.mean_y - beta * euler_mascheroni;
            break;
        case Family::laplace:
            beta = std::sqrt(0.5 * m.var_y);
            gamma = m.mean_y;
            break;
        default:
            break;
    }

    const double oriented_cov = direction_sign(direction) * m.cov_xy;
    double tau = 0.0;
    bool clamped = false;
    if (oriented_cov <= 0.0) {
        clamped = oriented_cov < 0.0;
    } else {
        const double raw =
            std::pow(alpha * shape * oriented_cov / (beta * g1), 1.0 / shape);
        tau = std::min(raw, 1.0);
        clamped = raw > 1.0;
    }

    FitResult fit;
    fit.family = k;
    fit.direction = direction;
    fit.method = Method::mme;
    fit.marginal = {alpha, shape};
    fit.dependence = {beta, gamma, tau, direction};
    fit.converged = true;
    fit.iterations = iterations;
    fit.tau_clamped = clamped;
    fit.fingerprint = data_fingerprint(data);
    const AfcModel model = fit.model();
    fit.loglik = model.log_likelihood(data);
    fit.aic = 10.0 - 2.0 * fit.loglik;
    fit.rho = implied_rho(model);
    return fit;
}

FitResult mle(std::span<const Observation> data, Family k, Direction direction,
              const std::optional<AfcModel>& init) {
    if (k == Family::normal)
        throw std::domain_error("the normal family degenerates to independence; nothing to fit");
    if (k == Family::gumbel && direction == Direction::negative)
        throw std::invalid_argument("the gumbel family admits only the positive direction");
    check_data(data, 2);

    WeibullParams w0{};
    DependenceSpec d0{};
    if (init) {
        w0 = init->marginal();
        d0 = init->dependence();
    } else if (k == Family::cauchy) {
        // No moments to match: marginal from the x-moments, location/scale
        // from order statistics of y, tau from the middle of its range.
        const auto m = compute_moments(data);
        if (!(m.mean_x > 0.0 && m.var_x > 0.0))
            throw std::invalid_argument("degenerate sample moments");
        const auto [shape, iters] = invert_cv2(m.var_x / (m.mean_x * m.mean_x));
        (void)iters;
        std::vector<double> ys;
        ys.reserve(data.size());
        for (const auto& o : data) ys.push_back(o.y);
        const double q25 = sorted_quantile(ys, 0.25);
        const double q75 = sorted_quantile(ys, 0.75);
        const double iqr = q75 - q25;
        w0 = {std::tgamma(1.0 + 1.0 / shape) / m.mean_x, shape};
        d0 = {iqr > 0.0 ? 0.5 * iqr : 1.0, sorted_quantile(ys, 0.5), 0.5, direction};
    } else {
        const FitResult start = mme(data, k, direction);
        w0 = start.marginal;
        d0 = start.dependence;
    }

    const double tau0 = std::clamp(d0.tau, tau_floor, 1.0 - tau_floor);
    const std::vector<double> start{std::log(w0.alpha), std::log(d0.beta),
                                    std::log(w0.shape), d0.gamma, logit(tau0)};

    const int sign = direction_sign(direction);
    auto objective = [&](const std::vector<double>& u) {
        const double alpha = std::exp(u[0]);
        const double beta = std::exp(u[1]);
        const double shape = std::exp(u[2]);
        const double gamma = u[3];
        const double tau = inv_logit(u[4]);
        if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(shape) ||
            !std::isfinite(gamma) || alpha <= 0.0 || beta <= 0.0 || shape <= 0.0)
            return 1e300;
        const AfcModel m = AfcModel::make_unchecked(
            k, {alpha, shape}, {beta, gamma, tau, static_cast<Direction>(sign)});
        double sum = 0.0;
        for (const auto& o : data) sum += m.log_joint_density(o.x, o.y);
        return -sum;
    };

    const SimplexResult res = minimize_simplex(objective, start);

    FitResult fit;
    fit.family = k;
    fit.direction = direction;
    fit.method = Method::mle;
    fit.marginal = {std::exp(res.point[0]), std::exp(res.point[2])};
    fit.dependence = {std::exp(res.point[1]), res.point[3], inv_logit(res.point[4]), direction};
    fit.loglik = -res.value;
    fit.aic = 10.0 - 2.0 * fit.loglik;
    fit.converged = res.converged;
    fit.iterations = res.evaluations;
    fit.tau_clamped = false;
    fit.fingerprint = data_fingerprint(data);
    fit.rho = implied_rho(fit.model());
    return fit;
}

AicRanking aic_compare(std::span<const FitResult> fits) {
    if (fits.empty()) throw std::invalid_argument("nothing to rank");
    for (const auto& f : fits) {
        if (f.fingerprint != fits.front().fingerprint)
            throw std::invalid_argument("fits were produced from different datasets");
    }
    AicRanking ranking;
    ranking.order.resize(fits.size());
    std::iota(ranking.order.begin(), ranking.order.end(), std::size_t{0});
    std::stable_sort(ranking.order.begin(), ranking.order.end(),
                     [&](std::size_t a, std::size_t b) { return fits[a].aic < fits[b].aic; });
    ranking.selected = ranking.order.front();
    return ranking;
}

std::pair<double, double> wald_ci(double estimate, double se, double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence level must lie in (0,1)");
    if (!(se >= 0.0)) throw std::invalid_argument("standard error must be nonnegative");
    const double z = family_quantile(Family::normal, 0.5 + 0.5 * level);
    return {estimate - z * se, estimate + z * se};
}

} // namespace afc
