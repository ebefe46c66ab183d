#include "qwc/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qwc/errors.hpp"

namespace qwc {

CentralityResult make_result(std::string measure_name, Eigen::VectorXd scores, double tie_tol) {
    const int n = static_cast<int>(scores.size());
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(scores(i)))
            throw NumericError(measure_name + ": non-finite score at vertex " + std::to_string(i));
    CentralityResult r;
    r.ranking.resize(n);
    std::iota(r.ranking.begin(), r.ranking.end(), 0);
    std::sort(r.ranking.begin(), r.ranking.end(), [&](int a, int b) {
        if (scores(a) != scores(b)) return scores(a) > scores(b);
        return a < b;
    });
    // cluster descending scores into tie groups by adjacent gap
    for (int i = 0; i < n; ++i) {
        if (i == 0 || scores(r.ranking[i - 1]) - scores(r.ranking[i]) > tie_tol)
            r.tie_groups.emplace_back();
        r.tie_groups.back().push_back(r.ranking[i]);
    }
    // inside a group, ascending vertex index; re-flatten so the ranking and
    // its grouping agree
    int pos = 0;
    for (auto& grp : r.tie_groups) {
        std::sort(grp.begin(), grp.end());
        for (int v : grp) r.ranking[pos++] = v;
    }
    r.measure_name = std::move(measure_name);
    r.scores = std::move(scores);
    return r;
}

TransitionData transition_data(const Graph& g) {
    const DegreeData d = degree_data(g);
    for (int j = 0; j < g.n; ++j)
        if (d.degrees(j) == 0)
            throw InputError("transition matrix undefined: vertex " + std::to_string(j) +
                             " has degree 0");
    TransitionData t;
    t.T = g.adjacency;
    for (int j = 0; j < g.n; ++j) t.T.col(j) /= static_cast<double>(d.degrees(j));
    t.L_norm = Eigen::MatrixXd::Identity(g.n, g.n) - t.T;
    return t;
}

Eigen::MatrixXd patched_column_stochastic(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.cols());
    Eigen::MatrixXd e(a.rows(), n);
    for (int j = 0; j < n; ++j) {
        const double colsum = a.col(j).sum();
        if (colsum == 0.0)
            e.col(j).setConstant(1.0 / static_cast<double>(a.rows()));
        else
            e.col(j) = a.col(j) / colsum;
    }
    return e;
}

GoogleMatrixData google_matrix(const Graph& g, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw InputError("pagerank: alpha must be in [0,1]");
    GoogleMatrixData d;
    d.alpha = alpha;
    d.E = patched_column_stochastic(g.adjacency);
    d.G = alpha * d.E +
          Eigen::MatrixXd::Constant(g.n, g.n, (1.0 - alpha) / static_cast<double>(g.n));
    return d;
}

CentralityResult degree_centrality(const Graph& g) {
    const DegreeData d = degree_data(g);
    const double total = d.degrees.cast<double>().sum();
    if (total == 0.0) throw UndefinedMeasureError("degree centrality undefined on edgeless graph");
    return make_result("degree", d.degrees.cast<double>() / total);
}

CentralityResult dtrw_limit(const Graph& g) {
    if (!is_connected(g)) throw InputError("dtrw_limit requires a connected graph");
    const TransitionData t = transition_data(g);
    const DegreeData d = degree_data(g);
    Eigen::VectorXd pi = d.degrees.cast<double>() / d.degrees.cast<double>().sum();
    const double residual = (t.T * pi - pi).norm();
    if (residual > 1e-10)
        throw NumericError("dtrw_limit: fixed-point residual " + std::to_string(residual));
    return make_result("dtrw-limit", std::move(pi));
}

// Spectrum of T via the symmetric similarity S = D^-1/2 A D^-1/2.
// T = D^1/2 S D^-1/2, so T shares eigenvalues with S; right eigenvectors of T
// are D^1/2 q and left eigenvectors D^-1/2 q for orthonormal q.
namespace {
struct SymmetrizedSpectrum {
    Eigen::VectorXd lambda;    // ascending
    Eigen::MatrixXd q;         // orthonormal columns
    Eigen::VectorXd sqrt_deg;
};

SymmetrizedSpectrum symmetrized_spectrum(const Graph& g) {
    const DegreeData d = degree_data(g);
    for (int j = 0; j < g.n; ++j)
        if (d.degrees(j) == 0)
            throw InputError("walk spectrum undefined: vertex " + std::to_string(j) +
                             " has degree 0");
    SymmetrizedSpectrum s;
    s.sqrt_deg = d.degrees.cast<double>().cwiseSqrt();
    Eigen::MatrixXd sym = g.adjacency;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (sym(i, j) != 0.0) sym(i, j) /= s.sqrt_deg(i) * s.sqrt_deg(j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    s.lambda = es.eigenvalues();
    s.q = es.eigenvectors();
    return s;
}
} // namespace

CentralityResult ctrw_limit(const Graph& g) {
    const SymmetrizedSpectrum s = symmetrized_spectrum(g);
    const int n = g.n;
    // nullspace of L_norm = eigenvalue-1 eigenvectors of T
    if (n >= 2 && s.lambda(n - 2) > 1.0 - 1e-10)
        throw InputError("ctrw_limit: nullspace dimension > 1 signals a disconnected graph");
    Eigen::VectorXd pi = s.sqrt_deg.cwiseProduct(s.q.col(n - 1));
    if (pi.sum() < 0.0) pi = -pi;
    pi /= pi.sum();
    return make_result("ctrw-limit", std::move(pi));
}

Eigen::VectorXd lazy_step(const Eigen::VectorXd& p, const TransitionData& t, double epsilon) {
    if (epsilon <= 0.0 || epsilon > 1.0) throw InputError("lazy_step: epsilon must be in (0,1]");
    return epsilon * (t.T * p - p) + p;
}

CentralityResult eigenvector_centrality(const Graph& g) {
    if (!is_connected(g))
        throw InputError("eigenvector centrality requires a connected graph (Perron vector "
                         "otherwise not unique)");
    if (g.edge_count() == 0)
        throw UndefinedMeasureError("eigenvector centrality undefined on edgeless graph");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.adjacency);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    const double lambda_max = es.eigenvalues()(g.n - 1);
    Eigen::VectorXd v = es.eigenvectors().col(g.n - 1);
    if (v.sum() < 0.0) v = -v;
    const double residual = (g.adjacency * v - lambda_max * v).norm();
    if (residual > 1e-10)
        throw NumericError("eigenvector centrality residual " + std::to_string(residual));
    v /= v.sum();
    return make_result("eigenvector", std::move(v));
}

CentralityResult pagerank(const Graph& g, double alpha) {
    const GoogleMatrixData d = google_matrix(g, alpha);
    const int n = g.n;
    Eigen::VectorXd x;
    if (alpha < 1.0) {
        // Gx = x  <=>  (I - alpha E) x = (1-alpha)/n * 1   for sum(x) = 1
        x = (Eigen::MatrixXd::Identity(n, n) - alpha * d.E)
                .partialPivLu()
                .solve(Eigen::VectorXd::Constant(n, (1.0 - alpha) / n));
    } else {
        if (!is_connected(g) || is_bipartite(g))
            throw InputError("pagerank: alpha=1 allowed only for connected non-bipartite graphs");
        x = Eigen::VectorXd::Constant(n, 1.0 / n);
        for (int it = 0; it < 100000; ++it) {
            Eigen::VectorXd next = d.G * x;
            next /= next.sum();
            const double diff = (next - x).lpNorm<Eigen::Infinity>();
            x = next;
            if (diff < 1e-15) break;
        }
    }
    x /= x.sum();
    const double residual = (d.G * x - x).norm();
    if (residual > 1e-10)
        throw NumericError("pagerank residual " + std::to_string(residual));
    return make_result("pagerank", std::move(x));
}

CentralityResult pagerank_series(const Graph& g, double alpha, int k_max) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw InputError("pagerank_series: alpha must be in [0,1)");
    if (k_max < 0) throw InputError("pagerank_series: k_max must be >= 0");
    const GoogleMatrixData d = google_matrix(g, alpha);
    const int n = g.n;
    Eigen::VectorXd term = Eigen::VectorXd::Constant(n, 1.0 / n); // E^0 * (1/n) J column
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    double alpha_k = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        x += alpha_k * term;
        if (k < k_max) {
            term = d.E * term;
            alpha_k *= alpha;
        }
    }
    x *= (1.0 - alpha);
    return make_result("pagerank-series", std::move(x));
}

CentralityResult rwc(const Graph& g, double epsilon) {
    if (epsilon <= 0.0 || epsilon > 1.0) throw InputError("rwc: epsilon must be in (0,1]");
    if (!is_connected(g)) throw InputError("rwc requires a connected graph");
    if (epsilon == 1.0 && is_bipartite(g))
        throw NonConvergentError("rwc: the relaxation-time series diverges on bipartite graphs "
                                 "with epsilon=1; use a lazy walk (epsilon<1)");
    const SymmetrizedSpectrum s = symmetrized_spectrum(g);
    const int n = g.n;
    const Eigen::VectorXd deg = s.sqrt_deg.cwiseProduct(s.sqrt_deg);
    const Eigen::VectorXd pi = deg / deg.sum();
    // tau_j = sum_{k: lambda_k != 1} q_{jk}^2 / (1 - lambda_eps_k),
    // lambda_eps = eps*lambda + (1-eps); the unit eigenvalue is the largest.
    Eigen::VectorXd tau = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n - 1; ++k) {
        const double lam_eps = epsilon * s.lambda(k) + (1.0 - epsilon);
        if (lam_eps > 1.0 - 1e-12)
            throw InputError("rwc: repeated unit eigenvalue signals a disconnected graph");
        tau += s.q.col(k).cwiseAbs2() / (1.0 - lam_eps);
    }
    Eigen::VectorXd scores = pi.cwiseQuotient(tau);
    return make_result("rwc", std::move(scores));
}

} // namespace qwc
