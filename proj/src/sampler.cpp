#include "afc/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace afc {

namespace {

constexpr double log_zero_sentinel = -1e300;

// Log target-over-proposal ratio up to the common marginal factor.  Written
// so that at tau = 0 the two family terms are computed from bit-identical
// arguments and cancel exactly.
double log_weight(const AfcModel& model, const Observation& p) {
    const auto& d = model.dependence();
    const double t = (p.y - model.mu(p.x)) / d.beta;
    const double t0 = (p.y - d.gamma) / d.beta;
    double value = family_log_density(model.family(), t) -
                   family_log_density(model.family(), t0);
    if (d.tau != 0.0) {
        const double arg = direction_sign(d.direction) * model.r_ratio(p.x) *
                           family_density_ratio(model.family(), t);
        if (!(arg > -1.0)) return log_zero_sentinel;
        value += std::log1p(arg);
    }
    return std::isfinite(value) ? value : log_zero_sentinel;
}

} // namespace

Observation propose(const AfcModel& model, Rng& rng) {
    const double ux = rng.uniform();
    const double uy = rng.uniform();
    const auto& d = model.dependence();
    Observation p;
    p.x = weibull_quantile(model.marginal(), ux);
    p.y = d.gamma + d.beta * family_quantile(model.family(), uy);
    return p;
}

double log_acceptance(const AfcModel& model, const Observation& current,
                      const Observation& proposal) {
    if (!(current.x > 0.0) || !(proposal.x > 0.0))
        throw std::domain_error("chain states must have x > 0");
    const double ratio = log_weight(model, proposal) - log_weight(model, current);
    return ratio < 0.0 ? ratio : 0.0;
}

ChainOutput run_chain(const AfcModel& model, const ChainConfig& config) {
    if (config.n_draws == 0) throw std::invalid_argument("n_draws must be positive");
    if (config.thin == 0) throw std::invalid_argument("thin must be positive");
    if (config.init) {
        if (!(std::isfinite(config.init->x) && config.init->x > 0.0) ||
            !std::isfinite(config.init->y))
            throw std::invalid_argument("chain init lies outside the support");
    }

    const std::size_t burn_in = config.burn_in.value_or(config.n_draws * config.thin / 9);
    const std::size_t total = burn_in + config.n_draws * config.thin;

    Rng rng(config.seed);
    Observation current = config.init ? *config.init : propose(model, rng);
    double current_weight = log_weight(model, current);

    ChainOutput out;
    out.draws.reserve(config.n_draws);
    out.accepted = 0;
    out.total_steps = total;

    for (std::size_t step = 0; step < total; ++step) {
        const Observation proposal = propose(model, rng);
        const double proposal_weight = log_weight(model, proposal);
        const double u = rng.uniform();
        double log_alpha = proposal_weight - current_weight;
        if (log_alpha > 0.0) log_alpha = 0.0;
        if (u < std::exp(log_alpha)) {
            current = proposal;
            current_weight = proposal_weight;
            ++out.accepted;
        }
        if (step >= burn_in && (step - burn_in + 1) % config.thin == 0)
            out.draws.push_back(current);
    }
    out.acceptance_rate = static_cast<double>(out.accepted) / static_cast<double>(total);
    return out;
}

} // namespace afc
