// Acceptance suite: one pass/fail line per criterion, exit code = failures.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwc/csd.hpp"
#include "qwc/ctqw.hpp"
#include "qwc/experiment.hpp"
#include "qwc/graph.hpp"
#include "qwc/rng.hpp"
#include "qwc/serialize.hpp"
#include "qwc/stats.hpp"

using namespace qwc;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << detail
              << std::endl;
    if (!pass) ++g_failures;
}

Graph star4() { return Graph::from_edges({{0, 1}, {0, 2}, {0, 3}}, 4); }

Graph random_connected(int n, double p, Rng& rng) {
    GraphEnsembleSpec spec;
    spec.kind = EnsembleKind::ErdosRenyi;
    spec.n = n;
    spec.p = p;
    spec.require_connected = true;
    return ensure_connected(spec, rng);
}

Eigen::Matrix4cd star_closed_form(double t) {
    const double c = std::cos(std::sqrt(3.0) * t);
    const std::complex<double> s =
        std::complex<double>(0.0, -1.0) * std::sqrt(3.0) * std::sin(std::sqrt(3.0) * t);
    Eigen::Matrix4cd u;
    u << 3.0 * c, s, s, s,
         s, c + 2.0, c - 1.0, c - 1.0,
         s, c - 1.0, c + 2.0, c - 1.0,
         s, c - 1.0, c - 1.0, c + 2.0;
    return u / 3.0;
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = std::complex<double>(rng.normal(), rng.normal());
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

// ---- criteria ----

void criterion1() {
    const Graph g = star4();
    Eigen::VectorXd scores;
    double best_us = 1e18;
    for (int rep = 0; rep < 50; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        scores = ctqw_centrality(g).scores;
        const auto t1 = std::chrono::steady_clock::now();
        best_us = std::min(best_us,
                           std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    const double err = std::max({std::fabs(scores(0) - 0.5), std::fabs(scores(1) - 1.0 / 6.0),
                                 std::fabs(scores(2) - 1.0 / 6.0),
                                 std::fabs(scores(3) - 1.0 / 6.0)});
    std::ostringstream ss;
    ss << "star values max err " << err << ", runtime " << best_us << " us";
    report(1, err <= 1e-9 && best_us < 1000.0, ss.str());
}

void criterion2() {
    const auto spec = SpectralDecomposition::compute(hamiltonian(star4(), Hamiltonian::Adjacency));
    Rng rng(2026);
    double prop_err = 0.0, prob_err = 0.0;
    const WalkerState psi0 = WalkerState::uniform_superposition(4);
    for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform() * 10.0;
        prop_err = std::max(prop_err, (propagator(spec, t) - star_closed_form(t))
                                          .cwiseAbs()
                                          .maxCoeff());
        const Eigen::VectorXd p = evolve(spec, psi0, t).probabilities();
        const double c2 = std::cos(2.0 * std::sqrt(3.0) * t);
        prob_err = std::max(prob_err, std::fabs(p(0) - (0.5 - 0.25 * c2)));
        for (int j = 1; j < 4; ++j)
            prob_err = std::max(prob_err, std::fabs(p(j) - (1.0 / 6.0 + c2 / 12.0)));
    }
    const double period = M_PI / std::sqrt(3.0);
    const double period_err = (evolve(spec, psi0, period).probabilities() -
                               psi0.probabilities())
                                  .cwiseAbs()
                                  .maxCoeff();
    std::ostringstream ss;
    ss << "propagator err " << prop_err << ", probability err " << prob_err << ", period err "
       << period_err;
    report(2, prop_err <= 1e-10 && prob_err <= 1e-12 && period_err <= 1e-10, ss.str());
}

void criterion3() {
    const double period = M_PI / std::sqrt(3.0);
    const double star_err = (ctqw_centrality_quadrature(star4(), period, period / 1000.0).scores -
                             ctqw_centrality(star4()).scores)
                                .cwiseAbs()
                                .maxCoeff();
    Rng rng(3033);
    double rand_err = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Graph g = random_connected(20, 0.3, rng);
        rand_err = std::max(rand_err, (ctqw_centrality_quadrature(g, 200.0, 0.01).scores -
                                       ctqw_centrality(g).scores)
                                          .cwiseAbs()
                                          .maxCoeff());
    }
    std::ostringstream ss;
    ss << "star one-period err " << star_err << ", random-graph window err " << rand_err;
    report(3, star_err <= 1e-6 && rand_err <= 1e-3, ss.str());
}

void criterion4() {
    Rng rng(4044);
    double ident_err = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Graph g = random_connected(15, 0.35, rng);
        const Eigen::VectorXd deg = degree_centrality(g).scores;
        ident_err = std::max(ident_err, (dtrw_limit(g).scores - deg).cwiseAbs().maxCoeff());
        ident_err = std::max(ident_err, (ctrw_limit(g).scores - deg).cwiseAbs().maxCoeff());
    }
    double series_err = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Graph g = random_connected(15, 0.35, rng);
        series_err = std::max(series_err, (pagerank_series(g, 0.85, 200).scores -
                                           pagerank(g, 0.85).scores)
                                              .cwiseAbs()
                                              .maxCoeff());
    }
    // rwc closed form against the brute-force truncated series
    double rwc_err = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Graph g = random_connected(20, 0.3, rng);
        const TransitionData t = transition_data(g);
        const DegreeData d = degree_data(g);
        const Eigen::VectorXd pi =
            d.degrees.cast<double>() / d.degrees.cast<double>().sum();
        const Eigen::MatrixXd t_eps =
            0.5 * t.T + 0.5 * Eigen::MatrixXd::Identity(g.n, g.n);
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.n, g.n);
        Eigen::VectorXd tau = Eigen::VectorXd::Zero(g.n);
        for (int n = 0; n <= 10000; ++n) {
            tau += power.diagonal() - pi;
            power = t_eps * power;
        }
        rwc_err = std::max(rwc_err,
                           (rwc(g, 0.5).scores - pi.cwiseQuotient(tau)).cwiseAbs().maxCoeff());
    }
    std::ostringstream ss;
    ss << "limit identities err " << ident_err << ", pagerank series err " << series_err
       << ", rwc closed-vs-series err " << rwc_err;
    report(4, ident_err <= 1e-10 && series_err <= 1e-10 && rwc_err <= 1e-8, ss.str());
}

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    GraphEnsembleSpec spec;
    spec.kind = EnsembleKind::ErdosRenyi;
    spec.n = 20;
    spec.p = 0.3;
    spec.count = 100;
    spec.seed = 5055;
    spec.require_connected = true;
    const auto report_data =
        run_ensemble(spec, {Measure::Ctqw, Measure::Eigenvector}, {1}, {}, {}, 1);
    const double mean_tau = report_data.mean_tau.tau(0, 1);
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    std::ostringstream ss;
    ss << "mean tau(ctqw, eigenvector) = " << mean_tau << " (required band [0.50, 0.68]), "
       << secs << " s";
    report(5, mean_tau >= 0.50 && mean_tau <= 0.68 && secs < 120.0, ss.str());
}

void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Measure> measures{Measure::PageRank, Measure::Eigenvector, Measure::Ctqw};
    GraphEnsembleSpec er;
    er.kind = EnsembleKind::ErdosRenyi;
    er.n = 100;
    er.p = 0.3;
    er.count = 100;
    er.seed = 6066;
    er.require_connected = true;
    GraphEnsembleSpec ba;
    ba.kind = EnsembleKind::BarabasiAlbert;
    ba.n = 100;
    ba.m = 2;
    ba.count = 100;
    ba.seed = 6067;
    ba.require_connected = true;
    const auto rer = run_ensemble(er, measures, {1, 5}, {}, {}, 1);
    const auto rba = run_ensemble(ba, measures, {1, 5}, {}, {}, 1);
    auto factor = [](const EnsembleReport& r, const std::string& a, const std::string& b,
                     int n) {
        for (const auto& e : r.agreement.entries)
            if (((e.measure_a == a && e.measure_b == b) ||
                 (e.measure_a == b && e.measure_b == a)) &&
                e.top_n == n)
                return e.factor;
        return -1.0;
    };
    const double er_ev1 = factor(rer, "eigenvector", "ctqw", 1);
    const double ba_ev1 = factor(rba, "eigenvector", "ctqw", 1);
    const double er_pr1 = factor(rer, "pagerank", "ctqw", 1);
    const double ba_pr1 = factor(rba, "pagerank", "ctqw", 1);
    const double er_pr5 = factor(rer, "pagerank", "ctqw", 5);
    const double ba_pr5 = factor(rba, "pagerank", "ctqw", 5);
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    const bool pass = er_ev1 >= 0.90 && ba_ev1 >= 0.90 && er_pr1 >= 0.55 && er_pr1 <= 0.85 &&
                      ba_pr1 >= 0.75 && ba_pr1 <= 0.97 && er_pr5 >= 0.65 && er_pr5 <= 0.95 &&
                      ba_pr5 >= 0.65 && ba_pr5 <= 0.95 && secs < 600.0;
    std::ostringstream ss;
    ss << "top-1 ev/ctqw er " << er_ev1 << " ba " << ba_ev1 << "; top-1 pr/ctqw er " << er_pr1
       << " ba " << ba_pr1 << "; top-5 pr/ctqw er " << er_pr5 << " ba " << ba_pr5 << "; "
       << secs << " s single-threaded";
    report(6, pass, ss.str());
}

void criterion7() {
    Rng rng(7077);
    double haar_worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::MatrixXcd u = haar_unitary(4, rng);
        haar_worst = std::max(haar_worst, (csd_4x4(u).reconstruct() - u).norm());
    }
    const auto spec = SpectralDecomposition::compute(hamiltonian(star4(), Hamiltonian::Adjacency));
    double star_worst = 0.0, theta2_worst = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const Eigen::MatrixXcd u = propagator(spec, k * 9.0 / 40.0);
        const auto f = csd_4x4(u);
        star_worst = std::max(star_worst, (f.reconstruct() - u).norm());
        theta2_worst = std::max(theta2_worst, f.thetas(1));
    }
    bool fixtures_ok = true;
    double fit_worst = 0.0, unit_worst = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const auto v = verify_reference_factors(k);
        fixtures_ok = fixtures_ok && v.unitarity_ok && v.reconstruction_ok;
        fit_worst = std::max(fit_worst, v.residual_best);
        for (double r : v.block_unitarity) unit_worst = std::max(unit_worst, r);
    }
    std::ostringstream ss;
    ss << "haar worst " << haar_worst << ", star worst " << star_worst << ", theta2 worst "
       << theta2_worst << ", fixture unitarity worst " << unit_worst << ", fixture fit worst "
       << fit_worst;
    report(7,
           haar_worst <= 1e-9 && star_worst <= 1e-9 && theta2_worst <= 1e-8 && fixtures_ok &&
               unit_worst <= 5e-4 && fit_worst <= 5e-3,
           ss.str());
}

void criterion8() {
    ExperimentConfig analytic;
    analytic.analytic = true;
    const auto exact = run_experiment_simulation(analytic);
    bool analytic_zero = true;
    for (double d : exact.distances)
        if (d != 0.0) analytic_zero = false;

    int all_below = 0;
    const int reps = 1000;
    for (int r = 0; r < reps; ++r) {
        ExperimentConfig config;
        config.shots_per_step = 2250;
        config.seed = 808000 + static_cast<std::uint64_t>(r);
        const auto result = run_experiment_simulation(config);
        bool ok = true;
        for (double d : result.distances)
            if (d >= 0.04) ok = false;
        all_below += ok;
    }
    std::ostringstream ss;
    ss << "analytic distances all zero: " << (analytic_zero ? "yes" : "no") << "; "
       << all_below << "/1000 replications with every d_k < 0.04";
    report(8, analytic_zero && all_below >= 900, ss.str());
}

void criterion9() {
    const char* cli = std::getenv("QWC_CLI");
    if (cli == nullptr) {
        report(9, false, "QWC_CLI not set; cannot invoke the front end");
        return;
    }
    const fs::path dir = fs::temp_directory_path() / "qwc_acceptance_9";
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir);
    auto run = [&](const std::string& env, const std::string& args, const std::string& out) {
        const std::string cmd = env + " " + std::string(cli) + " " + args + " --out-dir " +
                                (dir / out).string() + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    bool ok = true;
    ok &= run("QC_THREADS=1", "ensemble --preset tau-ensemble --seed 90901", "a");
    ok &= run("QC_THREADS=1", "ensemble --preset tau-ensemble --seed 90901", "b");
    ok &= run("QC_THREADS=4", "ensemble --preset tau-ensemble --seed 90901", "c");
    ok &= run("QC_THREADS=1", "experiment --shots 2250 --seed 90902", "x");
    ok &= run("QC_THREADS=4", "experiment --shots 2250 --seed 90902", "y");
    bool identical = ok;
    if (ok) {
        for (const char* f :
             {"ensemble_report.json", "tau_mean.csv", "agreement.csv", "profile.csv"}) {
            const std::string a = read_text_file((dir / "a" / f).string());
            identical = identical && a == read_text_file((dir / "b" / f).string()) &&
                        a == read_text_file((dir / "c" / f).string());
        }
        for (const char* f : {"experiment_report.json", "experiment_counts.csv"}) {
            identical = identical && read_text_file((dir / "x" / f).string()) ==
                                         read_text_file((dir / "y" / f).string());
        }
    }
    fs::remove_all(dir, ec);
    std::ostringstream ss;
    ss << "preset reruns " << (ok ? "succeeded" : "failed") << ", reports "
       << (identical ? "byte-identical" : "differ") << " across runs and QC_THREADS {1,4}";
    report(9, ok && identical, ss.str());
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << (g_failures == 0 ? "all criteria passed"
                                  : std::to_string(g_failures) + " criterion(s) failed")
              << std::endl;
    return g_failures;
}
