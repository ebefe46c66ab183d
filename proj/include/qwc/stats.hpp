#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwc/centrality.hpp"
#include "qwc/ctqw.hpp"
#include "qwc/graph.hpp"

namespace qwc {

/// Kendall tau-b (tie-corrected). Scores within tie_tol are treated as tied.
/// Throws UndefinedMeasureError if either vector is entirely tied.
double kendall_tau(const Eigen::VectorXd& scores_a, const Eigen::VectorXd& scores_b,
                   double tie_tol = kTieTolerance);

struct RankCorrelationMatrix {
    std::vector<std::string> measures;
    Eigen::MatrixXd tau;
};

enum class Measure { Degree, DtrwLimit, CtrwLimit, Eigenvector, PageRank, Rwc, Ctqw };

struct MeasureParams {
    double alpha = 0.85;   // pagerank damping
    double epsilon = 0.5;  // rwc laziness
};

std::string measure_name(Measure m);
Measure measure_from_name(const std::string& name);
CentralityResult compute_measure(const Graph& g, Measure m, const MeasureParams& params = {});

RankCorrelationMatrix correlation_table(const Graph& g, const std::vector<Measure>& measures,
                                        const MeasureParams& params = {});

/// |top_n(a) & top_n(b)| / n over the deterministic tie-broken rankings.
double agreement_factor(const CentralityResult& a, const CentralityResult& b, int n);

struct ConfidenceInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Agresti-Coull interval, clipped to [0,1].
ConfidenceInterval agresti_coull_ci(long long successes, long long trials, double z = 1.96);

struct AgreementEntry {
    std::string measure_a;
    std::string measure_b;
    int top_n = 1;
    double factor = 0.0;
    ConfidenceInterval ci;
    long long successes = 0;
    long long trials = 0;
};

struct AgreementReport {
    std::vector<int> n_values;
    std::vector<AgreementEntry> entries;
    int ensemble_size = 0;
};

/// Rank-aligned score profiles: per measure, mean and standard deviation of
/// the rank-th largest score across the ensemble.
struct EnsembleProfile {
    std::vector<std::string> measures;
    Eigen::MatrixXd mean; // rank x measure
    Eigen::MatrixXd stddev;
};

struct EnsembleReport {
    GraphEnsembleSpec spec;
    RankCorrelationMatrix mean_tau;
    Eigen::MatrixXi tau_defined_count; // graphs contributing to each tau mean
    AgreementReport agreement;
    EnsembleProfile profile;
};

/// Runs the graph ensemble, averaging per-graph Kendall tau-b matrices,
/// pooling top-n agreement as n*count Bernoulli trials, and rank-aligning
/// score profiles. Deterministic given the seed regardless of thread count:
/// member i uses Rng::stream(seed, i) and reduction is ordered by index.
/// threads == 0 picks QC_THREADS from the environment (default 1).
EnsembleReport run_ensemble(const GraphEnsembleSpec& spec, const std::vector<Measure>& measures,
                            const std::vector<int>& n_values,
                            std::optional<std::uint64_t> seed_override = std::nullopt,
                            const MeasureParams& params = {}, int threads = 0);

/// Thread-count resolution used by run_ensemble (QC_THREADS, default 1).
int resolve_threads(int requested);

} // namespace qwc
