#pragma once

#include <string>
#include <string_view>
#include <utility>

namespace afc {

// Euler-Mascheroni constant (mean of the standard Gumbel distribution).
inline constexpr double euler_mascheroni = 0.5772156649015329;

// Conditional response families.  Each is a location-scale family given by a
// standardized survival function S(t); the model places Y | X > x at
// location mu(x) with scale beta.
enum class Family { logistic, gumbel, laplace, cauchy, normal };

const char* family_name(Family k);
Family family_from_string(std::string_view name); // throws std::invalid_argument

// Weibull marginal with inverse-scale alpha and shape lambda:
// survival(x) = exp(-(alpha*x)^lambda).
struct WeibullParams {
    double alpha;
    double shape;
};

// Throws std::invalid_argument unless both parameters are positive and finite.
void check_weibull(const WeibullParams& w);

double weibull_survival(const WeibullParams& w, double x); // x > 0
double weibull_density(const WeibullParams& w, double x);  // x > 0
double weibull_hazard(const WeibullParams& w, double x);   // x > 0
double weibull_quantile(const WeibullParams& w, double p); // p in (0,1)
std::pair<double, double> weibull_mean_var(const WeibullParams& w);

// Standardized family functions.  t is the standardized residual
// (y - location) / scale.
double family_survival(Family k, double t);
double family_density(Family k, double t);
double family_log_density(Family k, double t);
double family_density_deriv(Family k, double t);

// f'(t)/f(t).  Bounded for every implemented family; for the Laplace the
// value at t = 0 is 0 by the sgn(0) = 0 convention.
double family_density_ratio(Family k, double t);

// -f(t)/f'(t).  Throws std::domain_error where f'(t) = 0 (t = 0 in every
// implemented family, including the Laplace under the convention above).
double family_neg_q(Family k, double t);

// Standardized quantile (inverse CDF), u in (0,1).
double family_quantile(Family k, double u);

// Mean and variance of the location-scale member with the given location and
// scale.  Throws std::domain_error for the Cauchy (moments undefined).
std::pair<double, double> family_mean_var(Family k, double location, double scale);

// Extremal constants of -f/f': s_star = inf over t > 0, c_star = inf over
// t < 0 (0 means the infimum is not attained / the ratio is unbounded below
// only in the limit).  These bound the admissible dependence strength.
struct ExtremalConstants {
    double s_star;
    double c_star;
};

ExtremalConstants family_extremal_constants(Family k);

} // namespace afc
