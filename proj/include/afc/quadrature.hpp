#pragma once

#include "afc/model.hpp"

#include <functional>
#include <span>
#include <stdexcept>

namespace afc {

struct QuadratureSpec {
    double abs_tol = 1e-7;
    double rel_tol = 1e-6;
    int max_subdivisions = 2000;
};

struct Integral {
    double value;
    double error;     // accumulated error estimate
    int subdivisions; // bisections performed
};

// Raised when the subdivision budget runs out before the tolerances are met.
// Carries the best estimate so callers can still inspect it.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double best, double error)
        : std::runtime_error(what), best_estimate(best), error_estimate(error) {}

    double best_estimate;
    double error_estimate;
};

// Globally adaptive Gauss-Kronrod 7-15 on a finite interval.
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec = {});

// Integral over the whole real line via y = center + scale * tan(theta).
// Requires |f| to decay at least as fast as 1/y^2.
Integral integrate_real_line(const std::function<double(double)>& f, double center,
                             double scale, const QuadratureSpec& spec = {});

// Cov(X, Y) through Hoeffding's identity: the double integral of
// joint_survival minus the product of the marginal survivals.  Slow but
// independent of the closed-form moment expressions, which is the point.
// Throws for families without moments.
double hoeffding_covariance(const AfcModel& model, const QuadratureSpec& spec = {});

// | integral of [S((y-mu)/beta) - S((y-gamma)/beta)] dy  -  (mu - gamma) |.
// The integral telescopes to the location difference for every family with
// this survival-difference structure, including the Cauchy.
double shift_identity_residual(Family k, double beta, double mu_loc, double gamma,
                               const QuadratureSpec& spec = {});

// Symmetric families with an x-independent location have zero covariance no
// matter how the scale varies with x.  This probes that cancellation with a
// step-function scale (equal segments of (0, q(0.999)], last value held in
// the tail) and returns the |residual| of the Hoeffding double integral
// taken over a symmetric window.  Throws for asymmetric families (Gumbel).
double symmetric_zero_cov_residual(Family k, const WeibullParams& marginal, double location,
                                   std::span<const double> scales,
                                   const QuadratureSpec& spec = {});

// Central finite-difference mixed partial of joint_survival; approximates the
// joint density to O(h^2).  Requires x > h.
double mixed_partial(const AfcModel& model, double x, double y, double h);

} // namespace afc
