#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qwc/graph.hpp"
#include "qwc/rng.hpp"

namespace qwc {

/// One projective-measurement record at walk step k.
struct MeasurementRecord {
    int k = 0;
    long long shots = 0;
    std::vector<long long> counts;
    Eigen::VectorXd p_hat;
    Eigen::VectorXd p_theory;
    Eigen::VectorXd std_errors; // sqrt(counts)/shots, Poissonian
};

/// Exact outcome distribution of the star-graph walk at t = k * delta_t:
/// P0 = 1/2 - cos(2*sqrt(3) t)/4 and 1/6 + cos(2*sqrt(3) t)/12 on the leaves.
Eigen::Vector4d theoretical_distribution(int k, double delta_t = 9.0 / 40.0);

/// Multinomial(shots, p) sample; deterministic given the rng state.
MeasurementRecord sample_measurement(const Eigen::VectorXd& p, long long shots, Rng& rng);

/// Half the L1 distance (total variation) between two outcome distributions.
double norm1_distance(const Eigen::VectorXd& p_exp, const Eigen::VectorXd& p_th);

struct ExperimentConfig {
    int steps = 8;
    double delta_t = 9.0 / 40.0;
    long long shots_per_step = 2250;
    std::uint64_t seed = 0;
    bool analytic = false;  // bypass sampling: p_hat = p_theory, d_k = 0
    bool route_csd = false; // build each step through the CSD factors
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<MeasurementRecord> records;
    std::vector<double> distances;
};

/// Discretized-walk measurement simulation: for each k in 1..steps applies
/// U(k*delta_t) to the uniform superposition (optionally reassembled from
/// its CSD factors), samples counts and reports norm-1 distances.
ExperimentResult run_experiment_simulation(const Graph& g, const ExperimentConfig& config);

/// The same on the 4-vertex star the walk was demonstrated on.
ExperimentResult run_experiment_simulation(const ExperimentConfig& config);

} // namespace qwc
