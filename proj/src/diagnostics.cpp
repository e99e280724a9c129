#include "afc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afc {

namespace {

template <typename Cdf>
double ks_distance(std::vector<double>& xs, Cdf cdf) {
    if (xs.empty()) throw std::invalid_argument("empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

} // namespace

double ks_weibull(std::vector<double> xs, const WeibullParams& w) {
    return ks_distance(xs, [&](double x) { return 1.0 - weibull_survival(w, x); });
}

double ks_family(std::vector<double> ts, Family k) {
    return ks_distance(ts, [&](double t) { return 1.0 - family_survival(k, t); });
}

} // namespace afc
