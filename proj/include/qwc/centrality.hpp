#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwc/graph.hpp"

namespace qwc {

/// Scores within this absolute distance are treated as tied when building
/// rankings and tie groups (centrality scores are probability-like, O(1)).
inline constexpr double kTieTolerance = 1e-9;

/// Per-vertex scores plus the induced ranking. The ranking lists vertex
/// indices by descending score; inside a tie group, ascending vertex index.
struct CentralityResult {
    std::string measure_name;
    Eigen::VectorXd scores;
    std::vector<int> ranking;
    std::vector<std::vector<int>> tie_groups; // partition of ranking, in rank order
};

/// Builds the deterministic ranking and tie groups for a score vector.
CentralityResult make_result(std::string measure_name, Eigen::VectorXd scores,
                             double tie_tol = kTieTolerance);

/// Column-stochastic transition matrix T = A D^-1 and the normalized
/// Laplacian I - T. Rejects graphs with isolated (degree-0) vertices.
struct TransitionData {
    Eigen::MatrixXd T;
    Eigen::MatrixXd L_norm;
};

TransitionData transition_data(const Graph& g);

/// PageRank operator data: E is the patched column-stochastic adjacency
/// (dangling columns replaced by 1/n), G = alpha*E + (1-alpha)/n * J.
struct GoogleMatrixData {
    double alpha = 0.85;
    Eigen::MatrixXd E;
    Eigen::MatrixXd G;
};

GoogleMatrixData google_matrix(const Graph& g, double alpha);
/// Patches an arbitrary non-negative column matrix (available separately so
/// the dangling-column branch can be exercised on artificial inputs).
Eigen::MatrixXd patched_column_stochastic(const Eigen::MatrixXd& a);

CentralityResult degree_centrality(const Graph& g);
CentralityResult dtrw_limit(const Graph& g);
CentralityResult ctrw_limit(const Graph& g);

/// One lazy-walk step: eps*(T-I)*P + P. Requires 0 < eps <= 1.
Eigen::VectorXd lazy_step(const Eigen::VectorXd& p, const TransitionData& t, double epsilon);

CentralityResult eigenvector_centrality(const Graph& g);

CentralityResult pagerank(const Graph& g, double alpha = 0.85);

/// Truncated walk-series PageRank:
/// x_i = (1-alpha)/n * sum_j sum_{k<=k_max} alpha^k (E^k)_{ij}.
/// The raw truncated sum is returned (it converges to pagerank() with
/// geometric tail alpha^(k_max+1)/(1-alpha)).
CentralityResult pagerank_series(const Graph& g, double alpha, int k_max);

/// Random walk centrality C_j = pi_j / tau_j for the lazy transition matrix
/// T_eps = eps*T + (1-eps)*I, with the relaxation time computed in closed
/// form from the eigensystem of the symmetrized D^-1/2 A D^-1/2.
CentralityResult rwc(const Graph& g, double epsilon = 0.5);

} // namespace qwc
