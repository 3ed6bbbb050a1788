#include "vqf/resources.hpp"

#include <bit>
#include <cmath>

#include "vqf/analysis.hpp"
#include "vqf/preprocess.hpp"

namespace vqf {

double shots_per_gradient(const DiagonalHamiltonian& h, int layers, double epsilon) {
    return (layers + 1.0) * h.n * grad_variance(h) / (epsilon * epsilon);
}

double gates_per_gradient(const DiagonalHamiltonian& h, int layers, double epsilon) {
    return (layers + 1.0) * (2.0 * layers + 1.0) * h.n * h.n * grad_variance(h) /
           (epsilon * epsilon);
}

double default_epsilon(const DiagonalHamiltonian& h) { return std::sqrt(grad_variance(h)) / 100.0; }

ResourceEstimate make_estimate(std::uint64_t m, const DiagonalHamiltonian& h, int layers,
                               std::optional<double> epsilon) {
    ResourceEstimate est;
    est.m = m;
    est.n = h.n;
    est.layers = layers;
    est.epsilon = epsilon.value_or(default_epsilon(h));
    est.shots_per_gradient = shots_per_gradient(h, layers, est.epsilon);
    est.gates_per_gradient = gates_per_gradient(h, layers, est.epsilon);
    est.trial_division_bound = trial_division_bound(m);
    return est;
}

TrialDivisionResult trial_division(std::uint64_t m) {
    TrialDivisionResult result;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        ++result.divisions_used;
        if (m % p == 0) {
            result.factor = p;
            return result;
        }
    }
    return result;
}

std::uint64_t trial_division_bound(std::uint64_t m) {
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
    while (root * root > m) --root;
    while ((root + 1) * (root + 1) <= m) ++root;
    return root - 1;
}

QubitCounts qubit_counts(std::uint64_t m) {
    const auto [pf, qf] = reference_factors(m);
    const auto prior = std::make_pair(std::bit_width(pf), std::bit_width(qf));

    QubitCounts counts;
    counts.no_preprocess_no_prior = static_cast<int>(
        build_clauses(build_instance(m, std::nullopt, false)).variables.size());
    counts.no_preprocess_prior =
        static_cast<int>(build_clauses(build_instance(m, prior, false)).variables.size());
    counts.preprocess_no_prior =
        simplify(build_clauses(build_instance(m, std::nullopt, true))).qubit_count;
    counts.preprocess_prior = simplify(build_clauses(build_instance(m, prior, true))).qubit_count;
    return counts;
}

double extrapolate_qubits(const std::vector<std::pair<double, double>>& points,
                          double target_n_m) {
    if (points.size() < 2) throw DegenerateFit("need at least two points for a line fit");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto count = static_cast<double>(points.size());
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) throw DegenerateFit("all points share one abscissa");
    const double slope = (count * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / count;
    return slope * target_n_m + intercept;
}

} // namespace vqf
