#pragma once

#include "afc/families.hpp"

#include <vector>

namespace afc {

// Kolmogorov-Smirnov distance between a sample and the Weibull CDF.
double ks_weibull(std::vector<double> xs, const WeibullParams& w);

// Kolmogorov-Smirnov distance between standardized residuals and a family CDF.
double ks_family(std::vector<double> ts, Family k);

} // namespace afc
