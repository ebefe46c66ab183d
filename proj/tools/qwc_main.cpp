// Command-line front end: centrality reports, random-graph ensemble
// statistics, cosine-sine compilation of walk propagators, and the
// shot-noise measurement simulation.

#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qwc/csd.hpp"
#include "qwc/ctqw.hpp"
#include "qwc/errors.hpp"
#include "qwc/experiment.hpp"
#include "qwc/serialize.hpp"
#include "qwc/stats.hpp"

namespace {

using nlohmann::json;

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t s =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::cout << "seed: " << s << "\n";
    return s;
}

std::vector<qwc::Measure> parse_measures(const std::vector<std::string>& names) {
    std::vector<qwc::Measure> measures;
    for (const auto& name : names) {
        if (name == "all") {
            for (const char* m : {"degree", "pagerank", "eigenvector", "ctqw", "rwc"})
                measures.push_back(qwc::measure_from_name(m));
        } else {
            measures.push_back(qwc::measure_from_name(name));
        }
    }
    if (measures.empty()) throw qwc::InputError("no measures requested");
    return measures;
}

int cmd_centrality(const std::string& graph_file, const std::vector<std::string>& measure_names,
                   double alpha, double epsilon, const std::string& format,
                   const std::string& out_dir, double trace_t_max, double trace_dt) {
    const qwc::Graph g = qwc::read_graph(graph_file);
    const std::vector<qwc::Measure> measures = parse_measures(measure_names);
    qwc::MeasureParams params;
    params.alpha = alpha;
    params.epsilon = epsilon;

    json config;
    config["command"] = "centrality";
    config["graph"] = graph_file;
    config["alpha"] = alpha;
    config["epsilon"] = epsilon;
    config["format"] = format;
    std::vector<std::string> resolved;
    for (qwc::Measure m : measures) resolved.push_back(qwc::measure_name(m));
    config["measures"] = resolved;

    for (qwc::Measure m : measures) {
        const qwc::CentralityResult r = qwc::compute_measure(g, m, params);
        if (format == "csv") {
            qwc::write_text_file(out_path(out_dir, "centrality_" + r.measure_name + ".csv"),
                                 qwc::to_csv(r));
        } else {
            json j = qwc::to_json(r);
            j["config"] = config;
            qwc::write_text_file(out_path(out_dir, "centrality_" + r.measure_name + ".json"),
                                 j.dump(2) + "\n");
        }
    }
    const qwc::RankCorrelationMatrix table = qwc::correlation_table(g, measures, params);
    if (format == "csv") {
        qwc::write_text_file(out_path(out_dir, "correlation_table.csv"), qwc::to_csv(table));
    } else {
        json j = qwc::to_json(table);
        j["config"] = config;
        qwc::write_text_file(out_path(out_dir, "correlation_table.json"), j.dump(2) + "\n");
    }
    if (trace_t_max > 0.0) {
        const auto spec = qwc::SpectralDecomposition::compute(
            qwc::hamiltonian(g, qwc::Hamiltonian::Adjacency));
        const auto trace = qwc::probability_trace(
            spec, qwc::WalkerState::uniform_superposition(g.n), trace_t_max, trace_dt);
        qwc::write_text_file(out_path(out_dir, "trace.csv"), qwc::trace_csv(trace));
    }
    qwc::write_text_file(out_path(out_dir, "run_config.json"), config.dump(2) + "\n");
    return 0;
}

struct EnsembleFamily {
    std::string label;
    qwc::GraphEnsembleSpec spec;
};

int cmd_ensemble(const std::string& preset, std::string kind, int n, double p, int m, int count,
                 std::vector<std::string> measure_names, std::vector<int> n_values,
                 std::optional<std::uint64_t> seed_flag, const std::string& out_dir) {
    std::vector<EnsembleFamily> families;
    if (!preset.empty()) {
        if (preset == "tau-ensemble") {
            qwc::GraphEnsembleSpec s;
            s.kind = qwc::EnsembleKind::ErdosRenyi;
            s.n = 20;
            s.p = 0.3;
            s.count = 100;
            s.require_connected = true;
            families.push_back({"erdos-renyi", s});
            measure_names = {"all"};
        } else if (preset == "agreement-ensemble" || preset == "profile-ensemble") {
            const int c = preset == "agreement-ensemble" ? 100 : 200;
            qwc::GraphEnsembleSpec er;
            er.kind = qwc::EnsembleKind::ErdosRenyi;
            er.n = 100;
            er.p = 0.3;
            er.count = c;
            er.require_connected = true;
            qwc::GraphEnsembleSpec ba;
            ba.kind = qwc::EnsembleKind::BarabasiAlbert;
            ba.n = 100;
            ba.m = 2;
            ba.count = c;
            ba.require_connected = true;
            families.push_back({"erdos-renyi", er});
            families.push_back({"barabasi-albert", ba});
            measure_names = {"pagerank", "eigenvector", "ctqw"};
        } else {
            throw qwc::InputError("unknown preset: " + preset +
                                  " (expected tau-ensemble, agreement-ensemble or "
                                  "profile-ensemble)");
        }
    } else {
        qwc::GraphEnsembleSpec s;
        if (kind == "er" || kind == "erdos-renyi") {
            s.kind = qwc::EnsembleKind::ErdosRenyi;
            s.p = p;
        } else if (kind == "ba" || kind == "barabasi-albert") {
            s.kind = qwc::EnsembleKind::BarabasiAlbert;
            s.m = m;
        } else {
            throw qwc::InputError("ensemble kind must be er or ba");
        }
        s.n = n;
        s.count = count;
        s.require_connected = true;
        families.push_back({kind == "ba" || kind == "barabasi-albert" ? "barabasi-albert"
                                                                      : "erdos-renyi",
                            s});
    }
    const std::uint64_t seed = resolve_seed(seed_flag);
    const std::vector<qwc::Measure> measures = parse_measures(measure_names);
    if (n_values.empty()) n_values = {1, 2, 3, 4, 5};

    json config;
    config["command"] = "ensemble";
    config["preset"] = preset;
    config["seed"] = seed;
    config["n_values"] = n_values;
    std::vector<std::string> resolved;
    for (qwc::Measure mm : measures) resolved.push_back(qwc::measure_name(mm));
    config["measures"] = resolved;

    json report;
    std::string tau_csv, agree_csv, prof_csv;
    for (std::size_t f = 0; f < families.size(); ++f) {
        auto& fam = families[f];
        fam.spec.seed = seed + f; // families get distinct streams
        const qwc::EnsembleReport r = qwc::run_ensemble(fam.spec, measures, n_values);
        report["families"][fam.label] = qwc::to_json(r);
        config["families"][fam.label] = qwc::to_json(fam.spec);
        const std::string family = families.size() > 1 ? fam.label : "";
        const std::string a_csv = qwc::agreement_csv(r.agreement, family);
        const std::string p_csv = qwc::profile_csv(r.profile, family);
        if (f == 0) {
            tau_csv = families.size() > 1 ? "family,measure_a,measure_b,tau\n"
                                          : "measure_a,measure_b,tau\n";
            agree_csv = a_csv;
            prof_csv = p_csv;
        } else {
            agree_csv += a_csv.substr(a_csv.find('\n') + 1);
            prof_csv += p_csv.substr(p_csv.find('\n') + 1);
        }
        for (std::size_t i = 0; i < r.mean_tau.measures.size(); ++i)
            for (std::size_t k = 0; k < r.mean_tau.measures.size(); ++k) {
                if (!family.empty()) tau_csv += family + ",";
                tau_csv += r.mean_tau.measures[i] + "," + r.mean_tau.measures[k] + "," +
                           qwc::format_double(
                               r.mean_tau.tau(static_cast<int>(i), static_cast<int>(k))) +
                           "\n";
            }
    }
    report["config"] = config;
    qwc::write_text_file(out_path(out_dir, "ensemble_report.json"), report.dump(2) + "\n");
    qwc::write_text_file(out_path(out_dir, "tau_mean.csv"), tau_csv);
    qwc::write_text_file(out_path(out_dir, "agreement.csv"), agree_csv);
    qwc::write_text_file(out_path(out_dir, "profile.csv"), prof_csv);
    qwc::write_text_file(out_path(out_dir, "run_config.json"), config.dump(2) + "\n");
    return 0;
}

int cmd_compile(bool star4, int k, double delta_t, const std::string& input_file,
                bool verify_reference, const std::string& out_dir) {
    json config;
    config["command"] = "compile";
    config["verify_reference"] = verify_reference;

    if (verify_reference) {
        json records = json::array();
        bool all_ok = true;
        for (int step = 1; step <= 8; ++step) {
            const qwc::FactorVerification v = qwc::verify_reference_factors(step, delta_t);
            json r;
            r["k"] = v.k;
            r["theta_best"] = v.theta_best;
            r["residual_best"] = v.residual_best;
            r["block_unitarity"] = v.block_unitarity;
            r["unitarity_ok"] = v.unitarity_ok;
            r["reconstruction_ok"] = v.reconstruction_ok;
            records.push_back(r);
            all_ok = all_ok && v.unitarity_ok && v.reconstruction_ok;
            std::cout << "k=" << v.k << " theta=" << v.theta_best
                      << " residual=" << v.residual_best
                      << (v.unitarity_ok && v.reconstruction_ok ? " ok" : " MISMATCH") << "\n";
        }
        json out;
        out["config"] = config;
        out["records"] = records;
        out["all_ok"] = all_ok;
        qwc::write_text_file(out_path(out_dir, "verification.json"), out.dump(2) + "\n");
        return 0;
    }

    Eigen::MatrixXcd u;
    if (star4) {
        config["star4_k"] = k;
        config["delta_t"] = delta_t;
        const qwc::Graph star = qwc::Graph::from_edges({{0, 1}, {0, 2}, {0, 3}}, 4);
        const auto spec = qwc::SpectralDecomposition::compute(
            qwc::hamiltonian(star, qwc::Hamiltonian::Adjacency));
        u = qwc::propagator(spec, k * delta_t);
    } else if (!input_file.empty()) {
        config["input"] = input_file;
        json j = json::parse(qwc::read_text_file(input_file));
        u = qwc::matrix_from_json(j.contains("matrix") ? j["matrix"] : j);
    } else {
        throw qwc::InputError("compile: provide --star4 or --input FILE");
    }

    const qwc::CsdFactorization f = u.rows() == 4 ? qwc::csd_4x4(u) : qwc::csd_blocks(u);
    const double residual = (f.reconstruct() - u).norm();
    json out = qwc::to_json(f);
    out["reconstruction_residual"] = residual;
    out["config"] = config;
    qwc::write_text_file(out_path(out_dir, "factorization.json"), out.dump(2) + "\n");
    std::cout << qwc::circuit_listing(f);
    std::cout << "reconstruction residual: " << residual << "\n";
    return 0;
}

int cmd_experiment(int steps, double delta_t, long long shots,
                   std::optional<std::uint64_t> seed_flag, bool analytic, bool route_csd,
                   const std::string& out_dir) {
    qwc::ExperimentConfig config;
    config.steps = steps;
    config.delta_t = delta_t;
    config.shots_per_step = shots;
    config.seed = analytic ? 0 : resolve_seed(seed_flag);
    config.analytic = analytic;
    config.route_csd = route_csd;
    const qwc::ExperimentResult result = qwc::run_experiment_simulation(config);
    json j = qwc::to_json(result);
    j["config"]["command"] = "experiment";
    qwc::write_text_file(out_path(out_dir, "experiment_report.json"), j.dump(2) + "\n");
    qwc::write_text_file(out_path(out_dir, "experiment_counts.csv"), qwc::to_csv(result));
    qwc::write_text_file(out_path(out_dir, "run_config.json"),
                         j["config"].dump(2) + "\n");
    for (std::size_t i = 0; i < result.distances.size(); ++i)
        std::cout << "d_" << (i + 1) << " = " << result.distances[i] << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-time quantum walk centrality toolkit"};
    app.require_subcommand(1);

    // centrality
    auto* cent = app.add_subcommand("centrality", "centrality scores and rank correlations");
    std::string graph_file, format = "json", out_dir = ".";
    std::vector<std::string> measure_names = {"all"};
    double alpha = 0.85, epsilon = 0.5, trace_t_max = 0.0, trace_dt = 0.01;
    cent->add_option("--graph", graph_file, "edge-list or .json graph file")->required();
    cent->add_option("--measures", measure_names, "measure names or 'all'");
    cent->add_option("--alpha", alpha, "pagerank damping");
    cent->add_option("--epsilon", epsilon, "rwc laziness");
    cent->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cent->add_option("--out-dir", out_dir, "output directory");
    cent->add_option("--trace-t-max", trace_t_max, "emit trace.csv up to this time");
    cent->add_option("--trace-dt", trace_dt, "trace time step");

    // ensemble
    auto* ens = app.add_subcommand("ensemble", "random-graph ensemble statistics");
    std::string preset, kind = "er";
    int n = 20, m = 2, count = 100;
    double p = 0.3;
    std::vector<std::string> ens_measures = {"all"};
    std::vector<int> n_values;
    std::optional<std::uint64_t> seed_flag;
    std::string ens_out_dir = ".";
    ens->add_option("--preset", preset,
                    "tau-ensemble | agreement-ensemble | profile-ensemble");
    ens->add_option("--kind", kind, "er or ba");
    ens->add_option("--n", n, "vertex count");
    ens->add_option("--p", p, "edge probability (er)");
    ens->add_option("--m", m, "edges per new vertex (ba)");
    ens->add_option("--count", count, "ensemble size");
    ens->add_option("--measures", ens_measures, "measure names or 'all'");
    ens->add_option("--top-n", n_values, "agreement top-n sizes (default 1..5)");
    ens->add_option("--seed", seed_flag, "run seed (drawn from entropy when absent)");
    ens->add_option("--out-dir", ens_out_dir, "output directory");

    // compile
    auto* comp = app.add_subcommand("compile", "cosine-sine decomposition of a unitary");
    bool star4 = false, verify_reference = false;
    int star_k = 1;
    double delta_t = 9.0 / 40.0;
    std::string input_file, comp_out_dir = ".";
    comp->add_flag("--star4", star4, "compile the 4-vertex star walk step");
    comp->add_option("--k", star_k, "star walk step index");
    comp->add_option("--delta-t", delta_t, "walk time step");
    comp->add_option("--input", input_file, "JSON unitary matrix file");
    comp->add_flag("--verify-reference", verify_reference,
                   "check the published step factors for k=1..8");
    comp->add_option("--out-dir", comp_out_dir, "output directory");

    // experiment
    auto* exp = app.add_subcommand("experiment", "shot-noise measurement simulation");
    int steps = 8;
    long long shots = 2250;
    double exp_delta_t = 9.0 / 40.0;
    bool analytic = false, route_csd = false;
    std::optional<std::uint64_t> exp_seed;
    std::string exp_out_dir = ".";
    exp->add_option("--steps", steps, "number of walk steps");
    exp->add_option("--delta-t", exp_delta_t, "walk time step");
    exp->add_option("--shots", shots, "shots per step");
    exp->add_option("--seed", exp_seed, "run seed (drawn from entropy when absent)");
    exp->add_flag("--analytic", analytic, "exact distributions, no sampling");
    exp->add_flag("--route-csd", route_csd, "apply each step through its CSD factors");
    exp->add_option("--out-dir", exp_out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cent->parsed())
            return cmd_centrality(graph_file, measure_names, alpha, epsilon, format, out_dir,
                                  trace_t_max, trace_dt);
        if (ens->parsed())
            return cmd_ensemble(preset, kind, n, p, m, count, ens_measures, n_values, seed_flag,
                                ens_out_dir);
        if (comp->parsed())
            return cmd_compile(star4, star_k, delta_t, input_file, verify_reference,
                               comp_out_dir);
        if (exp->parsed())
            return cmd_experiment(steps, exp_delta_t, shots, exp_seed, analytic, route_csd,
                                  exp_out_dir);
    } catch (const qwc::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const qwc::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
