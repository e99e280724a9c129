#include "afc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace afc {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].  Even-indexed
// Kronrod nodes coincide with the embedded 7-point Gauss rule.
constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
};
constexpr double gk_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = gk_weights[7] * fc;
    double gauss = gauss_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double offset = h * gk_nodes[i];
        const double pair = f(c - offset) + f(c + offset);
        kronrod += gk_weights[i] * pair;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * pair;
    }
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace

Integral integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec) {
    if (!(a < b)) throw std::invalid_argument("integration bounds must satisfy a < b");
    std::vector<Segment> segments{evaluate(f, a, b)};
    int subdivisions = 0;
    for (;;) {
        double total = 0.0;
        double error = 0.0;
        for (const auto& s : segments) {
            total += s.value;
            error += s.error;
        }
        if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
            return {total, error, subdivisions};
        if (subdivisions >= spec.max_subdivisions)
            throw QuadratureError("quadrature did not reach the requested tolerance", total,
                                  error);
        auto worst = std::max_element(
            segments.begin(), segments.end(),
            [](const Segment& lhs, const Segment& rhs) { return lhs.error < rhs.error; });
        const Segment old = *worst;
        const double mid = 0.5 * (old.a + old.b);
        *worst = evaluate(f, old.a, mid);
        segments.push_back(evaluate(f, mid, old.b));
        ++subdivisions;
    }
}

Integral integrate_real_line(const std::function<double(double)>& f, double center,
                             double scale, const QuadratureSpec& spec) {
    if (!(scale > 0.0)) throw std::invalid_argument("tan-substitution scale must be positive");
    constexpr double half_pi = 1.570796326794896619231321691639751442;
    auto transformed = [&](double theta) {
        const double t = std::tan(theta);
        const double y = center + scale * t;
        if (!std::isfinite(y)) return 0.0;
        const double fy = f(y);
        if (fy == 0.0) return 0.0;
        return fy * scale * (1.0 + t * t);
    };
    return integrate(transformed, -half_pi, half_pi, spec);
}

double hoeffding_covariance(const AfcModel& model, const QuadratureSpec& spec) {
    if (model.family() == Family::cauchy)
        throw std::domain_error("hoeffding covariance needs finite moments");
    const auto& w = model.marginal();
    const auto& d = model.dependence();
    const double x_hi = weibull_quantile(w, 1.0 - 1e-10);

    QuadratureSpec inner = spec;
    inner.abs_tol = spec.abs_tol * 1e-2;
    inner.rel_tol = spec.rel_tol * 1e-2;

    auto outer_integrand = [&](double x) {
        const double mu_x = model.mu(x);
        auto delta = [&](double y) {
            return family_survival(model.family(), (y - mu_x) / d.beta) -
                   family_survival(model.family(), (y - d.gamma) / d.beta);
        };
        const double center = 0.5 * (mu_x + d.gamma);
        const double scale = 0.5 * std::abs(mu_x - d.gamma) + 4.0 * d.beta;
        const double inner_value = integrate_real_line(delta, center, scale, inner).value;
        return weibull_survival(w, x) * inner_value;
    };
    return integrate(outer_integrand, 0.0, x_hi, spec).value;
}

double shift_identity_residual(Family k, double beta, double mu_loc, double gamma,
                               const QuadratureSpec& spec) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    auto delta = [&](double y) {
        return family_survival(k, (y - mu_loc) / beta) - family_survival(k, (y - gamma) / beta);
    };
    const double center = 0.5 * (mu_loc + gamma);
    const double scale = 0.5 * std::abs(mu_loc - gamma) + 4.0 * beta;
    const double integral = integrate_real_line(delta, center, scale, spec).value;
    return std::abs(integral - (mu_loc - gamma));
}

double symmetric_zero_cov_residual(Family k, const WeibullParams& marginal, double location,
                                   std::span<const double> scales,
                                   const QuadratureSpec& spec) {
    if (k == Family::gumbel)
        throw std::domain_error("zero-covariance cancellation requires a symmetric family");
    if (scales.empty()) throw std::invalid_argument("need at least one scale segment");
    double max_scale = 0.0;
    for (double b : scales) {
        if (!(b > 0.0)) throw std::invalid_argument("scales must be positive");
        max_scale = std::max(max_scale, b);
    }
    const double x_cut = weibull_quantile(marginal, 0.999);
    const double x_tail = weibull_quantile(marginal, 1.0 - 1e-10);
    const double window = 12.0 * max_scale;

    QuadratureSpec tight = spec;
    tight.abs_tol = std::min(spec.abs_tol, 1e-9 * window);
    tight.rel_tol = 1e-12;

    // Per scale value, integral of the survival over the symmetric window
    // minus its exact value (the half-width); per segment, the Weibull
    // survival mass.  The covariance residual is their weighted sum.
    double residual = 0.0;
    const std::size_t k_seg = scales.size();
    for (std::size_t i = 0; i <= k_seg; ++i) {
        const double b = (i < k_seg) ? scales[i] : scales.back();
        const double a_x = (i == 0) ? 0.0 : (i < k_seg ? x_cut * static_cast<double>(i) /
                                                             static_cast<double>(k_seg)
                                                       : x_cut);
        const double b_x = (i < k_seg) ? x_cut * static_cast<double>(i + 1) /
                                             static_cast<double>(k_seg)
                                       : x_tail;
        if (!(b_x > a_x)) continue;
        auto survival_shifted = [&](double y) {
            return family_survival(k, (y - location) / b);
        };
        const double g =
            integrate(survival_shifted, location - window, location + window, tight).value;
        const double weight =
            integrate([&](double x) { return weibull_survival(marginal, x); }, a_x, b_x, tight)
                .value;
        residual += weight * (g - window);
    }
    return std::abs(residual);
}

double mixed_partial(const AfcModel& model, double x, double y, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
    if (!(x > h)) throw std::domain_error("x - h must stay inside the support");
    const double pp = model.joint_survival(x + h, y + h);
    const double pm = model.joint_survival(x + h, y - h);
    const double mp = model.joint_survival(x - h, y + h);
    const double mm = model.joint_survival(x - h, y - h);
    return (pp - pm - mp + mm) / (4.0 * h * h);
}

} // namespace afc
