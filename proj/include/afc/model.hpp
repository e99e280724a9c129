#pragma once

#include "afc/families.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace afc {

// Direction of the dependence: whether survival of X shifts Y upward or
// downward.
enum class Direction : int { positive = 1, negative = -1 };

const char* direction_name(Direction d);
inline int direction_sign(Direction d) { return static_cast<int>(d); }

// Conditional location-scale specification: given survival past x, the
// response is the family member with location mu(x) = gamma +/- beta*(alpha*
// tau*x)^lambda and scale beta.  tau in [0,1] controls dependence strength;
// tau = 0 reduces the joint model to independence.
struct DependenceSpec {
    double beta;
    double gamma;
    double tau;
    Direction direction = Direction::positive;
};

struct Observation {
    double x;
    double y;
};

// One joint model: Weibull marginal for X, conditional family for Y.
//
// The validating constructor enforces parameter ranges plus the two
// structural restrictions (the Gumbel family only supports the positive
// direction; the normal family is only admissible at tau = 0).
// make_unchecked() skips all of that so that deliberately invalid
// configurations can still be probed through validate().
class AfcModel {
  public:
    AfcModel(Family family, WeibullParams marginal, DependenceSpec dependence);

    static AfcModel make_unchecked(Family family, WeibullParams marginal,
                                   DependenceSpec dependence);

    Family family() const { return family_; }
    const WeibullParams& marginal() const { return marginal_; }
    const DependenceSpec& dependence() const { return dependence_; }

    // Conditional location at x > 0.
    double mu(double x) const;
    // d mu / dx at x > 0.
    double mu_deriv(double x) const;
    // tau * h0(tau*x) / h0(x): the hazard ratio entering the dependence
    // factor.  Constant in x for the Weibull marginal (equal to tau^lambda);
    // 0 at tau = 0 by continuity.
    double r_ratio(double x) const;

    // P(X > x, Y > y) for x > 0.
    double joint_survival(double x, double y) const;
    // Mixed density d2/dxdy of the joint CDF.
    double joint_density(double x, double y) const;
    // log joint_density, evaluated stably; returns the -1e300 sentinel when
    // the density is zero or not representable.
    double log_joint_density(double x, double y) const;

    // Sum of log joint densities.  Throws on empty data or non-finite
    // observations; individual points outside the support contribute the
    // sentinel value instead of aborting the sum.
    double log_likelihood(std::span<const Observation> data) const;

    // Cov(X, Y) in closed form.  Throws for families without moments
    // (Cauchy, or rather: any family whose conditional mean is undefined).
    double covariance() const;
    // Pearson correlation in closed form; defined for the logistic, Gumbel
    // and Laplace families only.
    double correlation() const;

  private:
    AfcModel() = default;

    Family family_;
    WeibullParams marginal_;
    DependenceSpec dependence_;
};

// Largest attainable |correlation| for the family at the given Weibull shape
// (taken over tau in [0,1]; attained at tau = 1).
double rho_max(Family k, double shape);

// Rectangular evaluation grid.
struct EvalGrid {
    std::vector<double> xs;
    std::vector<double> ys;
};

// Default validity grid: 50x50, x spanning the 0.001..0.999 Weibull
// quantiles, y spanning location +/- 8 scale (40 scale for the Cauchy).
EvalGrid default_grid(const AfcModel& model, std::size_t nx = 50, std::size_t ny = 50);

// Result of scanning joint_density over a grid: a model is admissible only
// if the density is nonnegative everywhere.
struct ValidityReport {
    double min_density;
    double argmin_x;
    double argmin_y;
    std::size_t negative_count;
    std::size_t n_points;

    bool ok() const { return negative_count == 0; }
};

ValidityReport validate(const AfcModel& model, const EvalGrid& grid);

} // namespace afc
