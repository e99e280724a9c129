#include "afc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace afc {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

bool tolerances_met(const std::vector<Vertex>& simplex, const SimplexOptions& opts) {
    const auto& best = simplex.front();
    double f_spread = 0.0;
    double diameter = 0.0;
    for (const auto& v : simplex) {
        f_spread = std::max(f_spread, std::abs(v.f - best.f));
        for (std::size_t i = 0; i < best.x.size(); ++i)
            diameter = std::max(diameter, std::abs(v.x[i] - best.x[i]));
    }
    return f_spread <= opts.f_tol && diameter <= opts.x_tol;
}

// One Nelder-Mead run from a given start simplex; sorts vertices best-first.
bool run(const std::function<double(const std::vector<double>&)>& f,
         std::vector<Vertex>& simplex, int max_evals, int& evals, const SimplexOptions& opts) {
    const std::size_t n = simplex.front().x.size();
    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    order();
    while (evals < max_evals) {
        if (tolerances_met(simplex, opts)) return true;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / double(n);
        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i)
                p[i] = centroid[i] + coef * (simplex[n].x[i] - centroid[i]);
            return p;
        };

        Vertex reflected{blend(-1.0), 0.0};
        reflected.f = f(reflected.x);
        ++evals;
        if (reflected.f < simplex[0].f) {
            Vertex expanded{blend(-2.0), 0.0};
            expanded.f = f(expanded.x);
            ++evals;
            simplex[n] = expanded.f < reflected.f ? expanded : reflected;
        } else if (reflected.f < simplex[n - 1].f) {
            simplex[n] = reflected;
        } else {
            const bool outside = reflected.f < simplex[n].f;
            Vertex contracted{blend(outside ? -0.5 : 0.5), 0.0};
            contracted.f = f(contracted.x);
            ++evals;
            if (contracted.f < std::min(reflected.f, simplex[n].f)) {
                simplex[n] = contracted;
            } else {
                // shrink toward the best vertex
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[v].x[i] = 0.5 * (simplex[v].x[i] + simplex[0].x[i]);
                    simplex[v].f = f(simplex[v].x);
                    ++evals;
                }
            }
        }
        order();
    }
    return tolerances_met(simplex, opts);
}

std::vector<Vertex> make_simplex(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& start, double step, int& evals) {
    const std::size_t n = start.size();
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({start, f(start)});
    ++evals;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> p = start;
        p[i] += step;
        simplex.push_back({p, f(p)});
        ++evals;
    }
    return simplex;
}

} // namespace

SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> start, const SimplexOptions& opts) {
    if (start.empty()) throw std::invalid_argument("empty start point");
    const int max_evals = opts.max_evals_per_dim * static_cast<int>(start.size());
    int evals = 0;
    auto simplex = make_simplex(f, start, opts.initial_step, evals);
    bool converged = run(f, simplex, max_evals, evals, opts);

    if (!converged && opts.restart) {
        // Rebuild a smaller simplex around the best point found and try once
        // more with a fresh evaluation budget.
        auto restarted = make_simplex(f, simplex.front().x, 0.25 * opts.initial_step, evals);
        if (restarted.front().f > simplex.front().f) restarted.front() = simplex.front();
        simplex = std::move(restarted);
        const int budget = evals + max_evals;
        converged = run(f, simplex, budget, evals, opts);
    }
    return {simplex.front().x, simplex.front().f, evals, converged};
}

} // namespace afc
