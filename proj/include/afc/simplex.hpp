#pragma once

#include <functional>
#include <vector>

namespace afc {

struct SimplexOptions {
    double initial_step = 0.2;   // per-coordinate displacement of the start simplex
    double f_tol = 1e-10;        // spread of objective values across vertices
    double x_tol = 1e-8;         // simplex diameter (max-norm around the best vertex)
    int max_evals_per_dim = 2000;
    bool restart = true;         // one restart from a perturbed simplex on stall
};

struct SimplexResult {
    std::vector<double> point;
    double value;
    int evaluations;
    bool converged;
};

// Plain Nelder-Mead downhill simplex.  Deterministic: no randomized steps,
// so identical inputs give identical output on every run.
SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> start, const SimplexOptions& opts = {});

} // namespace afc
