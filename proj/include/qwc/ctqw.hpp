#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qwc/centrality.hpp"
#include "qwc/graph.hpp"

namespace qwc {

enum class Hamiltonian { Adjacency, Laplacian };

/// H = A, or the combinatorial Laplacian D - A.
Eigen::MatrixXd hamiltonian(const Graph& g, Hamiltonian convention);

/// Eigendecomposition of a real symmetric Hamiltonian, with eigenvalues
/// grouped into degenerate clusters. Cross terms inside a cluster survive
/// long-time averaging, so the grouping is what makes the centrality formula
/// exact on graphs with symmetric (hence exactly degenerate) spectra.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;       // ascending
    Eigen::MatrixXd eigenvectors;      // orthonormal columns
    std::vector<std::pair<int, int>> degeneracy_groups; // [begin,end) index ranges

    static SpectralDecomposition compute(const Eigen::MatrixXd& h);

    int dimension() const { return static_cast<int>(eigenvalues.size()); }
    /// Largest |eigenvalue|; the fastest oscillation frequency scale.
    double spectral_radius() const;
};

struct WalkerState {
    Eigen::VectorXcd amplitudes;
    double time = 0.0;

    static WalkerState uniform_superposition(int n);
    double norm() const { return amplitudes.norm(); }
    Eigen::VectorXd probabilities() const { return amplitudes.cwiseAbs2(); }
};

/// psi(t0 + t) = V e^{-i Lambda t} V^T psi(t0).
WalkerState evolve(const SpectralDecomposition& spec, const WalkerState& psi, double t);

/// U(t) = V e^{-i Lambda t} V^T.
Eigen::MatrixXcd propagator(const SpectralDecomposition& spec, double t);

/// Exact long-time-average vertex occupation from the uniform superposition:
/// C_j = sum_groups |sum_{k in group} V_jk (V^T psi0)_k|^2.
CentralityResult ctqw_centrality(const Graph& g,
                                 Hamiltonian convention = Hamiltonian::Adjacency);

/// Finite-window trapezoidal average of |<j|psi(t)>|^2 over [0, t_max].
/// Requires dt <= pi / (8 * spectral_radius).
CentralityResult ctqw_centrality_quadrature(const Graph& g, double t_max, double dt,
                                            Hamiltonian convention = Hamiltonian::Adjacency);

/// Probability traces P_j(t) on a uniform time grid, for CSV export.
struct ProbabilityTrace {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> probabilities;
};

ProbabilityTrace probability_trace(const SpectralDecomposition& spec, const WalkerState& psi0,
                                   double t_max, double dt);

} // namespace qwc
