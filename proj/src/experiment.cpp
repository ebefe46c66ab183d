#include "qwc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qwc/csd.hpp"
#include "qwc/ctqw.hpp"
#include "qwc/errors.hpp"

namespace qwc {

Eigen::Vector4d theoretical_distribution(int k, double delta_t) {
    if (k < 0) throw InputError("theoretical_distribution: k must be >= 0");
    const double t = k * delta_t;
    const double c2 = std::cos(2.0 * std::sqrt(3.0) * t);
    Eigen::Vector4d p;
    p(0) = 0.5 - 0.25 * c2;
    p(1) = p(2) = p(3) = 1.0 / 6.0 + c2 / 12.0;
    return p;
}

MeasurementRecord sample_measurement(const Eigen::VectorXd& p, long long shots, Rng& rng) {
    const int n = static_cast<int>(p.size());
    if (shots < 1) throw InputError("sample_measurement: shots must be >= 1");
    if (p.minCoeff() < -1e-12 || std::abs(p.sum() - 1.0) > 1e-9)
        throw InputError("sample_measurement: p must be a probability vector");
    MeasurementRecord rec;
    rec.shots = shots;
    rec.counts.assign(n, 0);
    // inverse-CDF draw per shot
    for (long long s = 0; s < shots; ++s) {
        const double r = rng.uniform();
        double acc = 0.0;
        int outcome = n - 1;
        for (int i = 0; i < n; ++i) {
            acc += p(i);
            if (r < acc) {
                outcome = i;
                break;
            }
        }
        ++rec.counts[outcome];
    }
    rec.p_hat = Eigen::VectorXd::Zero(n);
    rec.std_errors = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        rec.p_hat(i) = static_cast<double>(rec.counts[i]) / static_cast<double>(shots);
        rec.std_errors(i) = std::sqrt(static_cast<double>(rec.counts[i])) /
                            static_cast<double>(shots);
    }
    rec.p_theory = p;
    return rec;
}

double norm1_distance(const Eigen::VectorXd& p_exp, const Eigen::VectorXd& p_th) {
    if (p_exp.size() != p_th.size()) throw InputError("norm1_distance: length mismatch");
    if (std::abs(p_exp.sum() - 1.0) > 1e-9 || std::abs(p_th.sum() - 1.0) > 1e-9)
        throw InputError("norm1_distance: inputs must sum to 1");
    return 0.5 * (p_exp - p_th).lpNorm<1>();
}

namespace {
// Largest-remainder apportionment of shots proportional to p; used by the
// analytic mode so count columns still sum to the shot budget.
std::vector<long long> apportion(const Eigen::VectorXd& p, long long shots) {
    const int n = static_cast<int>(p.size());
    std::vector<long long> counts(n, 0);
    std::vector<std::pair<double, int>> remainders;
    long long assigned = 0;
    for (int i = 0; i < n; ++i) {
        const double exact = p(i) * static_cast<double>(shots);
        counts[i] = static_cast<long long>(std::floor(exact));
        assigned += counts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (long long r = 0; r < shots - assigned; ++r) ++counts[remainders[r % n].second];
    return counts;
}
} // namespace

ExperimentResult run_experiment_simulation(const Graph& g, const ExperimentConfig& config) {
    if (config.steps < 1) throw InputError("experiment: steps must be >= 1");
    if (config.shots_per_step < 1) throw InputError("experiment: shots must be >= 1");
    const SpectralDecomposition spec =
        SpectralDecomposition::compute(hamiltonian(g, Hamiltonian::Adjacency));
    const WalkerState psi0 = WalkerState::uniform_superposition(g.n);

    ExperimentResult result;
    result.config = config;
    for (int k = 1; k <= config.steps; ++k) {
        Eigen::MatrixXcd u = propagator(spec, k * config.delta_t);
        if (config.route_csd) {
            // route through the compiled circuit and reassemble
            u = csd_recursive(u)->reconstruct();
        }
        const Eigen::VectorXcd psi = u * psi0.amplitudes;
        Eigen::VectorXd p = psi.cwiseAbs2();
        p /= p.sum();

        MeasurementRecord rec;
        if (config.analytic) {
            rec.shots = config.shots_per_step;
            rec.counts = apportion(p, config.shots_per_step);
            rec.p_hat = p;
            rec.std_errors = Eigen::VectorXd::Zero(g.n);
            for (int i = 0; i < g.n; ++i)
                rec.std_errors(i) = std::sqrt(static_cast<double>(rec.counts[i])) /
                                    static_cast<double>(rec.shots);
        } else {
            Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(k));
            rec = sample_measurement(p, config.shots_per_step, rng);
        }
        rec.k = k;
        rec.p_theory = p;
        result.distances.push_back(norm1_distance(rec.p_hat, rec.p_theory));
        result.records.push_back(std::move(rec));
    }
    return result;
}

ExperimentResult run_experiment_simulation(const ExperimentConfig& config) {
    const Graph star = Graph::from_edges({{0, 1}, {0, 2}, {0, 3}}, 4);
    return run_experiment_simulation(star, config);
}

} // namespace qwc
