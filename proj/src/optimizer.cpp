#include "vqf/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace vqf {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct Counted {
    const Objective& f;
    const GradientFn& g;
    long long grad_evals = 0;

    double value(const std::vector<double>& x) {
        const double fx = f(x);
        if (!std::isfinite(fx)) throw NonFiniteValue("objective returned a non-finite value");
        return fx;
    }
    std::vector<double> grad(const std::vector<double>& x) {
        ++grad_evals;
        std::vector<double> gx = g(x);
        if (!all_finite(gx)) throw NonFiniteValue("gradient returned a non-finite value");
        return gx;
    }
};

struct LinePoint {
    double alpha = 0.0;
    double f = 0.0;
    double df = 0.0; // directional derivative
    std::vector<double> x;
    std::vector<double> grad;
};

// Strong-Wolfe line search (bracket and zoom). Returns false if the probe
// budget runs out without an acceptable step.
bool line_search(Counted& fn, const std::vector<double>& x0, double f0,
                 const std::vector<double>& g0, const std::vector<double>& dir,
                 const BFGSConfig& cfg, LinePoint& out) {
    const double df0 = dot(g0, dir);
    int probes = 0;

    auto probe = [&](double alpha) {
        LinePoint p;
        p.alpha = alpha;
        p.x = x0;
        for (std::size_t i = 0; i < x0.size(); ++i) p.x[i] += alpha * dir[i];
        p.f = fn.value(p.x);
        p.grad = fn.grad(p.x);
        p.df = dot(p.grad, dir);
        ++probes;
        return p;
    };

    auto zoom = [&](LinePoint lo, LinePoint hi) {
        while (probes < cfg.max_line_search_steps) {
            LinePoint mid = probe((lo.alpha + hi.alpha) / 2);
            if (mid.f > f0 + cfg.wolfe_c1 * mid.alpha * df0 || mid.f >= lo.f) {
                hi = std::move(mid);
                continue;
            }
            if (std::fabs(mid.df) <= -cfg.wolfe_c2 * df0) {
                out = std::move(mid);
                return true;
            }
            if (mid.df * (hi.alpha - lo.alpha) >= 0) hi = lo;
            lo = std::move(mid);
        }
        return false;
    };

    LinePoint prev;
    prev.alpha = 0.0;
    prev.f = f0;
    prev.df = df0;

    double alpha = 1.0;
    const double alpha_max = 1e3;
    bool first = true;
    while (probes < cfg.max_line_search_steps) {
        LinePoint cur = probe(alpha);
        if (cur.f > f0 + cfg.wolfe_c1 * alpha * df0 || (!first && cur.f >= prev.f))
            return zoom(std::move(prev), std::move(cur));
        if (std::fabs(cur.df) <= -cfg.wolfe_c2 * df0) {
            out = std::move(cur);
            return true;
        }
        if (cur.df >= 0) return zoom(std::move(cur), std::move(prev));
        prev = std::move(cur);
        alpha = std::min(2 * alpha, alpha_max);
        first = false;
    }
    return false;
}

} // namespace

RunRecord minimize(const Objective& objective, const GradientFn& gradient_fn,
                   std::vector<double> theta0, const BFGSConfig& config) {
    Counted fn{objective, gradient_fn};
    const std::size_t dim = theta0.size();

    std::vector<double> x = std::move(theta0);
    double fx = fn.value(x);
    std::vector<double> gx = fn.grad(x);

    RunRecord rec;
    rec.converged = inf_norm(gx) < config.grad_tol;

    // inverse Hessian approximation, dense row-major
    std::vector<double> hinv(dim * dim, 0.0);
    auto reset_hinv = [&] {
        std::fill(hinv.begin(), hinv.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) hinv[i * dim + i] = 1.0;
    };
    reset_hinv();

    std::vector<double> dir(dim), s(dim), y(dim), hy(dim);
    for (int iter = 0; iter < config.max_iters && !rec.converged; ++iter) {
        for (std::size_t i = 0; i < dim; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < dim; ++j) acc += hinv[i * dim + j] * gx[j];
            dir[i] = -acc;
        }
        if (dot(gx, dir) >= 0) { // not a descent direction; fall back to steepest descent
            reset_hinv();
            for (std::size_t i = 0; i < dim; ++i) dir[i] = -gx[i];
        }

        LinePoint accepted;
        if (!line_search(fn, x, fx, gx, dir, config, accepted)) break;

        for (std::size_t i = 0; i < dim; ++i) {
            s[i] = accepted.x[i] - x[i];
            y[i] = accepted.grad[i] - gx[i];
        }
        x = std::move(accepted.x);
        fx = accepted.f;
        gx = std::move(accepted.grad);

        if (inf_norm(gx) < config.grad_tol) {
            rec.converged = true;
            break;
        }

        const double ys = dot(y, s);
        if (ys > 1e-12 * inf_norm(y) * inf_norm(s)) {
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            const double rho = 1.0 / ys;
            for (std::size_t i = 0; i < dim; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < dim; ++j) acc += hinv[i * dim + j] * y[j];
                hy[i] = acc;
            }
            const double yhy = dot(y, hy);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    hinv[i * dim + j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] -
                                                s[i] * hy[j]);
        }
    }

    rec.final_energy = fx;
    rec.final_params = std::move(x);
    rec.gradient_evals = fn.grad_evals;
    return rec;
}

namespace {

// objective/gradient pair specialized per ansatz family
std::pair<Objective, GradientFn> make_callbacks(const AnsatzCircuit& circuit,
                                                const DiagonalHamiltonian& h) {
    switch (circuit.kind) {
    case AnsatzKind::CX:
        return {[&](const std::vector<double>& th) {
                    return fast::expectation_real(fast::run_real(circuit, th), h);
                },
                [&](const std::vector<double>& th) {
                    return fast::gradient_adjoint(circuit, th, h);
                }};
    case AnsatzKind::T:
        return {[&](const std::vector<double>& th) {
                    return expectation(run_product(circuit, th), h);
                },
                [&](const std::vector<double>& th) { return gradient(circuit, th, h); }};
    case AnsatzKind::QAOA:
    default:
        return {[&](const std::vector<double>& th) { return expectation(run(circuit, th), h); },
                [&](const std::vector<double>& th) { return gradient(circuit, th, h); }};
    }
}

} // namespace

EnsembleStats multistart(const AnsatzCircuit& circuit, const DiagonalHamiltonian& h, int restarts,
                         std::uint64_t base_seed, const BFGSConfig& config, int jobs) {
    if (restarts < 1) throw EmptyInput("multistart needs at least one restart");
    dense_table(h); // materialize once before any worker threads touch it

    const auto [objective, gradient_fn] = make_callbacks(circuit, h);
    std::vector<RunRecord> records(restarts);

    auto run_one = [&](int r) {
        SplitMix64 rng(mix_seed(base_seed, static_cast<std::uint64_t>(r)));
        std::vector<double> theta0(circuit.param_count);
        for (double& t : theta0) t = rng.next_double() * 2 * std::numbers::pi;
        RunRecord rec = minimize(objective, gradient_fn, std::move(theta0), config);
        rec.seed = r;
        records[r] = std::move(rec);
    };

    jobs = std::clamp(jobs, 1, restarts);
    if (jobs == 1) {
        for (int r = 0; r < restarts; ++r) run_one(r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&, w] {
                for (int r = w; r < restarts; r += jobs) run_one(r);
            });
        for (auto& t : pool) t.join();
    }

    std::sort(records.begin(), records.end(),
              [](const RunRecord& a, const RunRecord& b) { return a.seed < b.seed; });

    std::vector<double> energies(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) energies[i] = records[i].final_energy;

    EnsembleStats stats;
    stats.mean = 0.0;
    for (double e : energies) stats.mean += e;
    stats.mean /= static_cast<double>(energies.size());
    stats.q05 = quantile(energies, 0.05);
    stats.q95 = quantile(energies, 0.95);
    stats.records = std::move(records);
    return stats;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw EmptyInput("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

} // namespace vqf
