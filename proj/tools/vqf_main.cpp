// Experiment runner: encode factoring instances, optimize the ansatz
// families over BFGS multistarts, and emit resource/manifold reports as
// plot-ready CSV. Subcommands: encode, optimize, resources, manifold.

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqf/analysis.hpp"
#include "vqf/optimizer.hpp"
#include "vqf/resources.hpp"
#include "vqf/serialize.hpp"

namespace fs = std::filesystem;
using namespace vqf;

namespace {

constexpr int kConfigVersion = 1;

struct ExperimentConfig {
    std::vector<std::uint64_t> m_list;
    std::vector<std::string> ansatz{"cx"};
    std::string layers = "n";
    int restarts = 100;
    std::uint64_t seed = 42;
    int jobs = 1;
    std::string out = ".";
    bool prior = false;
    bool no_preprocess = false;
    BFGSConfig bfgs;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << content;
}

std::optional<std::pair<int, int>> prior_lengths(std::uint64_t m, bool use_prior) {
    if (!use_prior) return std::nullopt;
    const auto [p, q] = reference_factors(m);
    return std::make_pair(static_cast<int>(std::bit_width(p)),
                          static_cast<int>(std::bit_width(q)));
}

ReducedSystem make_reduced(std::uint64_t m, bool use_prior, bool preprocess) {
    const auto sys = build_clauses(build_instance(m, prior_lengths(m, use_prior), preprocess));
    return preprocess ? simplify(sys) : as_reduced(sys);
}

// layer policy: "n" (match qubit count), a fixed integer, or "a:b" sweeps
std::vector<int> resolve_layers(const std::string& policy, int n) {
    if (policy == "n") return {n};
    const auto colon = policy.find(':');
    if (colon == std::string::npos) return {std::stoi(policy)};
    const int lo = std::stoi(policy.substr(0, colon));
    const int hi = std::stoi(policy.substr(colon + 1));
    if (lo < 0 || hi < lo) throw Error("bad layer range: " + policy);
    std::vector<int> out;
    for (int l = lo; l <= hi; ++l) out.push_back(l);
    return out;
}

void load_config_file(const std::string& path, ExperimentConfig& cfg,
                      const std::map<std::string, bool>& overridden) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    if (!kv.contains("version") || std::stoi(kv["version"]) != kConfigVersion)
        throw Error("config file must declare version=" + std::to_string(kConfigVersion));

    auto fresh = [&](const std::string& key) {
        return kv.contains(key) && !(overridden.contains(key) && overridden.at(key));
    };
    auto split_list = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(item);
        return out;
    };

    if (fresh("m")) {
        cfg.m_list.clear();
        for (const auto& item : split_list(kv["m"])) cfg.m_list.push_back(std::stoull(item));
    }
    if (fresh("ansatz")) cfg.ansatz = split_list(kv["ansatz"]);
    if (fresh("layers")) cfg.layers = kv["layers"];
    if (fresh("restarts")) cfg.restarts = std::stoi(kv["restarts"]);
    if (fresh("seed")) cfg.seed = std::stoull(kv["seed"]);
    if (fresh("jobs")) cfg.jobs = std::stoi(kv["jobs"]);
    if (fresh("out")) cfg.out = kv["out"];
    if (fresh("prior")) cfg.prior = kv["prior"] == "1" || kv["prior"] == "true";
    if (fresh("no_preprocess"))
        cfg.no_preprocess = kv["no_preprocess"] == "1" || kv["no_preprocess"] == "true";
    if (fresh("grad_tol")) cfg.bfgs.grad_tol = std::stod(kv["grad_tol"]);
    if (fresh("max_iters")) cfg.bfgs.max_iters = std::stoi(kv["max_iters"]);
    if (fresh("wolfe_c1")) cfg.bfgs.wolfe_c1 = std::stod(kv["wolfe_c1"]);
    if (fresh("wolfe_c2")) cfg.bfgs.wolfe_c2 = std::stod(kv["wolfe_c2"]);
    if (fresh("max_line_search_steps"))
        cfg.bfgs.max_line_search_steps = std::stoi(kv["max_line_search_steps"]);
}

int cmd_encode(std::uint64_t m, bool use_prior, bool preprocess, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const auto reduced = make_reduced(m, use_prior, preprocess);
    const fs::path base = fs::path(out_dir) / ("m" + std::to_string(m));
    write_file(base.string() + "_clauses.json", to_json(reduced));

    std::printf("m=%llu n_m=%d regime=%s/%s\n", static_cast<unsigned long long>(m),
                reduced.instance.n_m, preprocess ? "preprocessed" : "raw",
                use_prior ? "prior" : "no-prior");
    if (reduced.qubit_count == 0) {
        try {
            quantize(reduced);
        } catch (const AlreadySolved& solved) {
            std::printf("solved during preprocessing: %llu = %llu * %llu\n",
                        static_cast<unsigned long long>(m),
                        static_cast<unsigned long long>(solved.p),
                        static_cast<unsigned long long>(solved.q));
            std::printf("qubits: 0\n");
            return 0;
        }
    }
    const auto h = quantize(reduced);
    write_file(base.string() + "_hamiltonian.json", to_json(h));
    std::printf("qubits: %d\n", reduced.qubit_count);
    std::printf("wrote %s_clauses.json and %s_hamiltonian.json\n", base.string().c_str(),
                base.string().c_str());
    return 0;
}

AnsatzCircuit build_ansatz(const std::string& kind, const DiagonalHamiltonian& h, int layers) {
    if (kind == "cx") return build_cx_ansatz(h.n, layers);
    if (kind == "t") return build_t_ansatz(h.n, layers);
    if (kind == "qaoa") return build_qaoa_ansatz(h, layers);
    throw Error("unknown ansatz kind: " + kind);
}

int cmd_optimize(const ExperimentConfig& cfg) {
    if (cfg.m_list.empty()) throw Error("optimize needs at least one m");
    if (cfg.restarts < 1) throw Error("restarts must be >= 1");
    fs::create_directories(cfg.out);

    std::string runs = "m,kind,L,seed,final_energy,gradient_evals,converged\n";
    std::string stats = "m,kind,L,mean,q05,q95,mean_grad_evals\n";

    for (const std::uint64_t m : cfg.m_list) {
        const auto reduced = make_reduced(m, cfg.prior, !cfg.no_preprocess);
        const auto h = quantize(reduced);
        for (const std::string& kind : cfg.ansatz) {
            for (const int layers : resolve_layers(cfg.layers, h.n)) {
                if (kind == "qaoa" && layers == 0) continue;
                const auto circuit = build_ansatz(kind, h, layers);
                const auto ensemble =
                    multistart(circuit, h, cfg.restarts, cfg.seed, cfg.bfgs, cfg.jobs);

                double grad_sum = 0.0;
                for (const auto& rec : ensemble.records) {
                    runs += std::to_string(m) + "," + kind + "," + std::to_string(layers) + "," +
                            std::to_string(rec.seed) + "," + fmt(rec.final_energy) + "," +
                            std::to_string(rec.gradient_evals) + "," +
                            (rec.converged ? "1" : "0") + "\n";
                    grad_sum += static_cast<double>(rec.gradient_evals);
                }
                stats += std::to_string(m) + "," + kind + "," + std::to_string(layers) + "," +
                         fmt(ensemble.mean) + "," + fmt(ensemble.q05) + "," + fmt(ensemble.q95) +
                         "," + fmt(grad_sum / static_cast<double>(ensemble.records.size())) + "\n";
                std::printf("m=%llu %s L=%d: mean=%s q05=%s q95=%s\n",
                            static_cast<unsigned long long>(m), kind.c_str(), layers,
                            fmt(ensemble.mean).c_str(), fmt(ensemble.q05).c_str(),
                            fmt(ensemble.q95).c_str());
            }
        }
    }
    write_file(fs::path(cfg.out) / "runs.csv", runs);
    write_file(fs::path(cfg.out) / "stats.csv", stats);
    return 0;
}

int cmd_resources(const ExperimentConfig& cfg) {
    if (cfg.m_list.empty()) throw Error("resources needs at least one m");
    fs::create_directories(cfg.out);

    std::string qubits = "m,n_m,regime,n\n";
    std::string resources = "m,L,epsilon,shots,gates,trial_bound\n";
    std::string fig2 = "# n_m  no_pre_no_prior  no_pre_prior  pre_no_prior  pre_prior\n";
    std::string fig3 = "# m  shots  gates  sqrt_m\n";
    std::vector<std::pair<double, double>> fit_points;

    for (const std::uint64_t m : cfg.m_list) {
        const auto inst = build_instance(m);
        const auto counts = qubit_counts(m);
        const auto row = [&](const char* regime, int n) {
            qubits += std::to_string(m) + "," + std::to_string(inst.n_m) + "," + regime + "," +
                      std::to_string(n) + "\n";
        };
        row("no-preprocess/no-prior", counts.no_preprocess_no_prior);
        row("no-preprocess/prior", counts.no_preprocess_prior);
        row("preprocess/no-prior", counts.preprocess_no_prior);
        row("preprocess/prior", counts.preprocess_prior);
        fig2 += std::to_string(inst.n_m) + "  " + std::to_string(counts.no_preprocess_no_prior) +
                "  " + std::to_string(counts.no_preprocess_prior) + "  " +
                std::to_string(counts.preprocess_no_prior) + "  " +
                std::to_string(counts.preprocess_prior) + "\n";
        fit_points.emplace_back(inst.n_m, counts.preprocess_no_prior);

        const auto reduced = make_reduced(m, false, true);
        if (reduced.qubit_count == 0) continue; // solved classically, nothing to estimate
        const auto h = quantize(reduced);
        const int layers = cfg.layers == "n" ? h.n : std::stoi(cfg.layers);
        const auto est = make_estimate(m, h, layers);
        resources += std::to_string(m) + "," + std::to_string(est.layers) + "," +
                     fmt(est.epsilon) + "," + fmt(est.shots_per_gradient) + "," +
                     fmt(est.gates_per_gradient) + "," + std::to_string(est.trial_division_bound) +
                     "\n";
        fig3 += std::to_string(m) + "  " + fmt(est.shots_per_gradient) + "  " +
                fmt(est.gates_per_gradient) + "  " + fmt(std::sqrt(static_cast<double>(m))) + "\n";
    }

    write_file(fs::path(cfg.out) / "qubits.csv", qubits);
    write_file(fs::path(cfg.out) / "resources.csv", resources);
    write_file(fs::path(cfg.out) / "fig2_qubits.dat", fig2);
    write_file(fs::path(cfg.out) / "fig3_shots_gates.dat", fig3);

    if (fit_points.size() >= 2) {
        const double at_2048 = extrapolate_qubits(fit_points, 2048);
        std::printf("linear fit of preprocessed/no-prior counts: %.1f qubits at n_m=2048\n",
                    at_2048);
    }
    std::printf("wrote qubits.csv, resources.csv, fig2_qubits.dat, fig3_shots_gates.dat in %s\n",
                cfg.out.c_str());
    return 0;
}

int cmd_manifold(const ExperimentConfig& cfg) {
    if (cfg.m_list.empty()) throw Error("manifold needs at least one m");
    fs::create_directories(cfg.out);

    std::string csv = "m,n,member_count,fraction,mean_in,mean_out\n";
    for (const std::uint64_t m : cfg.m_list) {
        const auto reduced = make_reduced(m, cfg.prior, !cfg.no_preprocess);
        const auto manifold = build_manifold(reduced, m);
        double mean_in = 0.0, mean_out = std::nan("");
        if (reduced.qubit_count > 0) {
            const auto h = quantize(reduced);
            std::tie(mean_in, mean_out) = manifold_energy_stats(manifold, h);
        }
        csv += std::to_string(m) + "," + std::to_string(manifold.n) + "," +
               std::to_string(manifold.member_states.size()) + "," + fmt(manifold.fraction) + "," +
               fmt(mean_in) + "," + (std::isnan(mean_out) ? "nan" : fmt(mean_out)) + "\n";
        std::printf("m=%llu n=%d fraction=%s mean_in=%s mean_out=%s\n",
                    static_cast<unsigned long long>(m), manifold.n, fmt(manifold.fraction).c_str(),
                    fmt(mean_in).c_str(), std::isnan(mean_out) ? "nan" : fmt(mean_out).c_str());
    }
    write_file(fs::path(cfg.out) / "manifold.csv", csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational quantum factoring laboratory"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;
    std::uint64_t encode_m = 0;

    auto* encode = app.add_subcommand("encode", "emit the clause system and Hamiltonian for m");
    encode->add_option("m", encode_m, "odd integer to factor")->required();
    encode->add_flag("--prior", cfg.prior, "use the true factor bit lengths");
    encode->add_flag("--no-preprocess", cfg.no_preprocess, "skip classical simplification");
    encode->add_option("--out", cfg.out, "output directory");

    auto add_common = [&](CLI::App* sub, bool with_ansatz) {
        sub->add_option("--config", config_path, "key=value config file (version=1)");
        sub->add_option("-m,--m", cfg.m_list, "target integers");
        sub->add_option("--seed", cfg.seed, "base RNG seed");
        sub->add_option("--restarts", cfg.restarts, "BFGS restarts per configuration");
        sub->add_option("--jobs", cfg.jobs, "parallel restarts");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--layers", cfg.layers, "layer policy: integer, 'n', or 'a:b' sweep");
        sub->add_flag("--prior", cfg.prior, "use the true factor bit lengths");
        sub->add_flag("--no-preprocess", cfg.no_preprocess, "skip classical simplification");
        if (with_ansatz)
            sub->add_option("--ansatz", cfg.ansatz, "ansatz kinds: cx, t, qaoa")
                ->delimiter(',');
        sub->add_option("--grad-tol", cfg.bfgs.grad_tol, "BFGS gradient tolerance");
        sub->add_option("--max-iters", cfg.bfgs.max_iters, "BFGS iteration cap");
    };

    auto* optimize = app.add_subcommand("optimize", "multistart BFGS over the ansatz families");
    add_common(optimize, true);
    auto* resources = app.add_subcommand("resources", "qubit counts and gradient cost estimates");
    add_common(resources, false);
    auto* manifold = app.add_subcommand("manifold", "solution-manifold statistics");
    add_common(manifold, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!config_path.empty()) {
            std::map<std::string, bool> overridden;
            for (CLI::App* sub : {optimize, resources, manifold}) {
                if (!sub->parsed()) continue;
                overridden["m"] = sub->count("--m") > 0;
                overridden["ansatz"] = sub->count("--ansatz") > 0;
                overridden["layers"] = sub->count("--layers") > 0;
                overridden["restarts"] = sub->count("--restarts") > 0;
                overridden["seed"] = sub->count("--seed") > 0;
                overridden["jobs"] = sub->count("--jobs") > 0;
                overridden["out"] = sub->count("--out") > 0;
                overridden["prior"] = sub->count("--prior") > 0;
                overridden["no_preprocess"] = sub->count("--no-preprocess") > 0;
                overridden["grad_tol"] = sub->count("--grad-tol") > 0;
                overridden["max_iters"] = sub->count("--max-iters") > 0;
            }
            load_config_file(config_path, cfg, overridden);
        }
        if (encode->parsed()) return cmd_encode(encode_m, cfg.prior, !cfg.no_preprocess, cfg.out);
        if (optimize->parsed()) return cmd_optimize(cfg);
        if (resources->parsed()) return cmd_resources(cfg);
        if (manifold->parsed()) return cmd_manifold(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
