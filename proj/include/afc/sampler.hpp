#pragma once

#include "afc/model.hpp"
#include "afc/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace afc {

struct ChainConfig {
    std::size_t n_draws = 1000;
    // Steps discarded before retention; defaults to ~10% of the total run
    // (n_draws * thin / 9) when not set.
    std::optional<std::size_t> burn_in;
    std::size_t thin = 5;
    std::uint64_t seed = 1;
    // Optional starting state; when absent the chain starts from one
    // proposal draw.
    std::optional<Observation> init;
};

struct ChainOutput {
    std::vector<Observation> draws;
    double acceptance_rate; // accepted / total steps, burn-in included
    std::size_t accepted;
    std::size_t total_steps;
};

// One independence proposal: X by Weibull inverse CDF, Y by the family
// inverse CDF at the independence locations.  Consumes exactly two uniforms,
// x first.
Observation propose(const AfcModel& model, Rng& rng);

// Log acceptance probability of an independence Metropolis-Hastings step,
// clamped to (-inf, 0].  Evaluated in the factored form where the marginal
// proposal terms cancel exactly, so at tau = 0 this is identically zero.
double log_acceptance(const AfcModel& model, const Observation& current,
                      const Observation& proposal);

// Independence Metropolis-Hastings chain targeting the joint density.
// Uniform draws are consumed in a fixed order (per step: proposal-x,
// proposal-y, acceptance-u), so output is fully reproducible from the seed.
ChainOutput run_chain(const AfcModel& model, const ChainConfig& config);

} // namespace afc
