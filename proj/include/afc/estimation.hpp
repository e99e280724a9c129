#pragma once

#include "afc/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace afc {

// First and second sample moments with 1/n denominators.
struct SampleMoments {
    std::size_t n;
    double mean_x;
    double mean_y;
    double var_x;
    double var_y;
    double cov_xy;
};

SampleMoments compute_moments(std::span<const Observation> data); // n >= 2

double pearson(std::span<const Observation> data);

enum class Method { mme, mle };

const char* method_name(Method m);

// Order-independent digest of a dataset; aic_compare refuses to rank fits
// whose digests differ.
std::uint64_t data_fingerprint(std::span<const Observation> data);

struct FitResult {
    Family family;
    Direction direction;
    Method method;
    WeibullParams marginal;
    DependenceSpec dependence;
    double loglik; // at the fitted parameters
    double aic;    // 2k - 2 loglik with k = 5
    bool converged;
    int iterations;    // optimizer evaluations (MLE) or bisection steps (MME)
    bool tau_clamped;  // point estimate was pulled back into [0, 1]
    std::optional<double> rho; // implied correlation; absent when undefined
    std::uint64_t fingerprint;

    AfcModel model() const { return AfcModel(family, marginal, dependence); }
};

// Method-of-moments estimator.  Defined for the logistic, Gumbel and Laplace
// families; inverts the Weibull coefficient of variation by bisection, the
// response moments in closed form, and the covariance for tau.  The tau
// point estimate is clamped to [0, 1] (and flagged) when the raw inversion
// leaves the admissible range or the empirical covariance has the wrong
// sign.
FitResult mme(std::span<const Observation> data, Family k, Direction direction);

// Maximum likelihood via Nelder-Mead on transformed parameters
// (log alpha, log beta, log lambda, gamma, logit tau).  Starts from the
// method-of-moments fit when one exists, otherwise (Cauchy) from marginal
// Weibull moments plus median/IQR of y and tau = 0.5.  An explicit init
// overrides both.
FitResult mle(std::span<const Observation> data, Family k, Direction direction,
              const std::optional<AfcModel>& init = {});

struct AicRanking {
    std::vector<std::size_t> order; // indices into the input, best first
    std::size_t selected;           // == order.front()
};

// Ranks fits of the same dataset by AIC, ascending.
AicRanking aic_compare(std::span<const FitResult> fits);

// Normal-approximation confidence interval.  Never clamped: interval
// endpoints may leave the parameter space and are reported as-is.
std::pair<double, double> wald_ci(double estimate, double se, double level);

} // namespace afc
