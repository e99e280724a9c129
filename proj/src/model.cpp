#include "afc/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace afc {

namespace {

// Finite stand-in for log(0) so a single impossible observation poisons a
// likelihood without destroying the arithmetic of optimizers.
constexpr double log_zero_sentinel = -1e300;

void check_x(double x) {
    if (!(x > 0.0)) throw std::domain_error("x must be positive");
}

void check_y(double y) {
    if (std::isnan(y)) throw std::domain_error("y must not be NaN");
}

} // namespace

const char* direction_name(Direction d) {
    return d == Direction::positive ? "positive" : "negative";
}

AfcModel::AfcModel(Family family, WeibullParams marginal, DependenceSpec dependence) {
    check_weibull(marginal);
    if (!(std::isfinite(dependence.beta) && dependence.beta > 0.0))
        throw std::invalid_argument("beta must be positive and finite");
    if (!std::isfinite(dependence.gamma))
        throw std::invalid_argument("gamma must be finite");
    if (!(dependence.tau >= 0.0 && dependence.tau <= 1.0))
        throw std::invalid_argument("tau must lie in [0, 1]");
    if (family == Family::gumbel && dependence.direction == Direction::negative)
        throw std::invalid_argument("the gumbel family admits only the positive direction");
    if (family == Family::normal && dependence.tau != 0.0)
        throw std::invalid_argument("the normal family is admissible only at tau = 0");
    family_ = family;
    marginal_ = marginal;
    dependence_ = dependence;
}

AfcModel AfcModel::make_unchecked(Family family, WeibullParams marginal,
                                  DependenceSpec dependence) {
    AfcModel m;
    m.family_ = family;
    m.marginal_ = marginal;
    m.dependence_ = dependence;
    return m;
}

double AfcModel::mu(double x) const {
    check_x(x);
    const auto& d = dependence_;
    if (d.tau == 0.0) return d.gamma;
    const double shift = d.beta * std::pow(marginal_.alpha * d.tau * x, marginal_.shape);
    return d.gamma + direction_sign(d.direction) * shift;
}

double AfcModel::mu_deriv(double x) const {
    check_x(x);
    const auto& d = dependence_;
    if (d.tau == 0.0) return 0.0;
    const double lam = marginal_.shape;
    return direction_sign(d.direction) * d.beta * lam *
           std::pow(marginal_.alpha * d.tau, lam) * std::pow(x, lam - 1.0);
}

double AfcModel::r_ratio(double x) const {
    check_x(x);
    const double tau = dependence_.tau;
    if (tau == 0.0) return 0.0;
    return tau * weibull_hazard(marginal_, tau * x) / weibull_hazard(marginal_, x);
}

double AfcModel::joint_survival(double x, double y) const {
    check_x(x);
    check_y(y);
    const double t = (y - mu(x)) / dependence_.beta;
    return weibull_survival(marginal_, x) * family_survival(family_, t);
}

double AfcModel::joint_density(double x, double y) const {
    check_x(x);
    check_y(y);
    const double beta = dependence_.beta;
    const double t = (y - mu(x)) / beta;
    const double base = weibull_density(marginal_, x) * family_density(family_, t) / beta;
    if (dependence_.tau == 0.0) return base;
    return base * (1.0 + direction_sign(dependence_.direction) * r_ratio(x) *
                             family_density_ratio(family_, t));
}

double AfcModel::log_joint_density(double x, double y) const {
    check_x(x);
    check_y(y);
    const auto& w = marginal_;
    const auto& d = dependence_;
    const double ax = w.alpha * x;
    const double log_f0 =
        std::log(w.shape * w.alpha) + (w.shape - 1.0) * std::log(ax) - std::pow(ax, w.shape);
    const double t = (y - mu(x)) / d.beta;
    double value = log_f0 + family_log_density(family_, t) - std::log(d.beta);
    if (d.tau != 0.0) {
        const double arg =
            direction_sign(d.direction) * r_ratio(x) * family_density_ratio(family_, t);
        if (!(arg > -1.0)) return log_zero_sentinel;
        value += std::log1p(arg);
    }
    return std::isfinite(value) ? value : log_zero_sentinel;
}

double AfcModel::log_likelihood(std::span<const Observation> data) const {
    if (data.empty()) throw std::invalid_argument("log_likelihood needs at least one observation");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!(std::isfinite(data[i].x) && data[i].x > 0.0) || !std::isfinite(data[i].y))
            throw std::invalid_argument("observation " + std::to_string(i) +
                                        " is outside the support");
    }
    double sum = 0.0;
    for (const auto& obs : data) sum += log_joint_density(obs.x, obs.y);
    return sum;
}

double AfcModel::covariance() const {
    if (family_ == Family::cauchy)
        throw std::domain_error("covariance is undefined: the cauchy family has no mean");
    const auto& d = dependence_;
    const double lam = marginal_.shape;
    return direction_sign(d.direction) * d.beta * std::pow(d.tau, lam) *
           std::tgamma(1.0 + 1.0 / lam) / (marginal_.alpha * lam);
}

double AfcModel::correlation() const {
    if (family_ == Family::cauchy || family_ == Family::normal)
        throw std::domain_error("correlation is defined for the logistic, gumbel and laplace "
                                "families only");
    const double var_x = weibull_mean_var(marginal_).second;
    const double var_y = family_mean_var(family_, dependence_.gamma, dependence_.beta).second;
    return covariance() / std::sqrt(var_x * var_y);
}

double rho_max(Family k, double shape) {
    const AfcModel unit(k, {1.0, shape}, {1.0, 0.0, 1.0, Direction::positive});
    return unit.correlation();
}

EvalGrid default_grid(const AfcModel& model, std::size_t nx, std::size_t ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
    const double x_lo = weibull_quantile(model.marginal(), 0.001);
    const double x_hi = weibull_quantile(model.marginal(), 0.999);
    const double spread = (model.family() == Family::cauchy ? 40.0 : 8.0) *
                          model.dependence().beta;
    const double y_lo = model.dependence().gamma - spread;
    const double y_hi = model.dependence().gamma + spread;
    EvalGrid grid;
    grid.xs.reserve(nx);
    grid.ys.reserve(ny);
    for (std::size_t i = 0; i < nx; ++i)
        grid.xs.push_back(x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                                     static_cast<double>(nx - 1));
    for (std::size_t j = 0; j < ny; ++j)
        grid.ys.push_back(y_lo + (y_hi - y_lo) * static_cast<double>(j) /
                                     static_cast<double>(ny - 1));
    return grid;
}

ValidityReport validate(const AfcModel& model, const EvalGrid& grid) {
    if (grid.xs.empty() || grid.ys.empty())
        throw std::invalid_argument("validity grid must be non-empty");
    ValidityReport report{std::numeric_limits<double>::infinity(), 0.0, 0.0, 0, 0};
    for (double x : grid.xs) {
        for (double y : grid.ys) {
            const double f = model.joint_density(x, y);
            if (f < report.min_density) {
                report.min_density = f;
                report.argmin_x = x;
                report.argmin_y = y;
            }
            if (f < 0.0) ++report.negative_count;
            ++report.n_points;
        }
    }
    return report;
}

} // namespace afc
