#pragma once

#include "afc/estimation.hpp"
#include "afc/sampler.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace afc {

// Replicated sampling-and-refitting experiment: draw `replicates` datasets
// of each size from `truth`, fit with each method, and summarize parameter
// recovery across replicates.
struct StudyDesign {
    AfcModel truth;
    std::vector<std::size_t> sizes;
    std::size_t replicates = 200;
    std::vector<Method> methods{Method::mme, Method::mle};
    std::uint64_t seed = 1;
};

// Parameter order used in raw estimate arrays.
inline constexpr std::array<const char*, 6> study_parameters{
    "alpha", "beta", "lambda", "gamma", "tau", "rho"};

struct StudyCell {
    std::size_t n;
    Method method;
    std::string parameter;
    double mean;   // across-replicate mean of the estimates
    double se;     // across-replicate sample standard deviation
    double ci_lo;  // mean -/+ z(0.975) * se
    double ci_hi;
    double pearson_mean; // mean sample correlation across that size's replicates
    std::size_t n_failed;
};

struct StudyRaw {
    std::size_t n;
    Method method;
    // One entry per successful replicate, ordered by replicate index; NaN in
    // the rho slot when the family has no correlation.
    std::vector<std::array<double, 6>> estimates;
};

struct StudyReport {
    AfcModel truth;
    std::size_t replicates;
    std::uint64_t seed;
    std::vector<StudyCell> rows;
    std::vector<StudyRaw> raw;
    std::vector<std::string> warnings; // e.g. failure rate above 5% in a cell
};

// Runs the full experiment.  Replicate r of size n always sees the seed
// derive_seed(design.seed, n, r) regardless of which sizes, methods or other
// replicates run alongside it, so any sub-design reproduces the same data.
// Chains use burn_in = 2000, thin = 5.  Replicates whose fit throws or does
// not converge are excluded from the summaries and counted in n_failed.
StudyReport run_study(const StudyDesign& design);

// Median over methods and parameters of se(n_small) / se(n_large); the
// root-n yardstick for how fast errors shrink.
double se_ratio(const StudyReport& report, std::size_t n_small, std::size_t n_large);

std::string study_csv(const StudyReport& report);
std::string study_json(const StudyReport& report);
void write_study_csv(const std::string& path, const StudyReport& report);
void write_study_json(const std::string& path, const StudyReport& report);

} // namespace afc
