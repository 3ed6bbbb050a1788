#pragma once

// BFGS minimization of E(theta) with strong-Wolfe line search, plus the
// multistart protocol: independent runs from Uniform[0, 2pi) initial angles,
// aggregated into mean and 5%/95% quantiles.

#include <cstdint>
#include <functional>
#include <vector>

#include "vqf/simulator.hpp"

namespace vqf {

struct BFGSConfig {
    double grad_tol = 1e-5; // infinity-norm threshold
    int max_iters = 1000;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    int max_line_search_steps = 40;
};

struct RunRecord {
    double final_energy = 0.0;
    std::vector<double> final_params;
    long long gradient_evals = 0; // every gradient call, line-search probes included
    bool converged = false;
    long long seed = 0; // restart index within the ensemble
};

struct EnsembleStats {
    double mean = 0.0;
    double q05 = 0.0;
    double q95 = 0.0;
    std::vector<RunRecord> records;
};

using Objective = std::function<double(const std::vector<double>&)>;
using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

// Standard BFGS on the inverse Hessian. Terminates when the gradient
// infinity-norm drops below grad_tol, max_iters is reached, or the line
// search fails. Throws NonFiniteValue if the callbacks return non-finite
// numbers.
RunRecord minimize(const Objective& objective, const GradientFn& gradient_fn,
                   std::vector<double> theta0, const BFGSConfig& config);

// `restarts` independent BFGS runs on <psi(theta)|H|psi(theta)>. Initial
// angles are drawn from a counter-based stream seeded by (base_seed, restart
// index), so results are reproducible and independent of `jobs`.
EnsembleStats multistart(const AnsatzCircuit& circuit, const DiagonalHamiltonian& h, int restarts,
                         std::uint64_t base_seed, const BFGSConfig& config, int jobs = 1);

// Linear-interpolation quantile (position (n-1)*q on the sorted values).
double quantile(std::vector<double> values, double q);

} // namespace vqf
