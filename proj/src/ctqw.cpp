#include "qwc/ctqw.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qwc/errors.hpp"

namespace qwc {

using namespace std::complex_literals;

Eigen::MatrixXd hamiltonian(const Graph& g, Hamiltonian convention) {
    if (convention == Hamiltonian::Adjacency) return g.adjacency;
    return degree_data(g).degree_matrix - g.adjacency;
}

SpectralDecomposition SpectralDecomposition::compute(const Eigen::MatrixXd& h) {
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw InputError("spectral decomposition requires a symmetric matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    SpectralDecomposition s;
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    const int n = s.dimension();
    const double tol = 1e-8 * std::max(1.0, s.spectral_radius());
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || s.eigenvalues(i) - s.eigenvalues(i - 1) > tol) {
            s.degeneracy_groups.emplace_back(begin, i);
            begin = i;
        }
    }
    return s;
}

double SpectralDecomposition::spectral_radius() const {
    if (eigenvalues.size() == 0) return 0.0;
    return eigenvalues.cwiseAbs().maxCoeff();
}

WalkerState WalkerState::uniform_superposition(int n) {
    if (n < 1) throw InputError("walker state needs n >= 1");
    WalkerState w;
    w.amplitudes = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    return w;
}

WalkerState evolve(const SpectralDecomposition& spec, const WalkerState& psi, double t) {
    Eigen::VectorXcd coeff = spec.eigenvectors.transpose() * psi.amplitudes;
    for (int k = 0; k < spec.dimension(); ++k)
        coeff(k) *= std::exp(-1.0i * spec.eigenvalues(k) * t);
    WalkerState out;
    out.amplitudes = spec.eigenvectors * coeff;
    out.time = psi.time + t;
    return out;
}

Eigen::MatrixXcd propagator(const SpectralDecomposition& spec, double t) {
    const int n = spec.dimension();
    Eigen::VectorXcd phases(n);
    for (int k = 0; k < n; ++k) phases(k) = std::exp(-1.0i * spec.eigenvalues(k) * t);
    return spec.eigenvectors * phases.asDiagonal() *
           spec.eigenvectors.transpose().cast<std::complex<double>>();
}

CentralityResult ctqw_centrality(const Graph& g, Hamiltonian convention) {
    if (g.n < 1) throw InputError("ctqw centrality needs n >= 1");
    const SpectralDecomposition spec = SpectralDecomposition::compute(hamiltonian(g, convention));
    const Eigen::VectorXd psi0 =
        Eigen::VectorXd::Constant(g.n, 1.0 / std::sqrt(static_cast<double>(g.n)));
    const Eigen::VectorXd coeff = spec.eigenvectors.transpose() * psi0;
    Eigen::VectorXd scores = Eigen::VectorXd::Zero(g.n);
    for (const auto& [begin, end] : spec.degeneracy_groups) {
        const Eigen::VectorXd proj =
            spec.eigenvectors.middleCols(begin, end - begin) * coeff.segment(begin, end - begin);
        scores += proj.cwiseAbs2();
    }
    return make_result("ctqw", std::move(scores));
}

CentralityResult ctqw_centrality_quadrature(const Graph& g, double t_max, double dt,
                                            Hamiltonian convention) {
    if (g.n < 1) throw InputError("ctqw centrality needs n >= 1");
    if (t_max < 0.0) throw InputError("quadrature: t_max must be >= 0");
    const SpectralDecomposition spec = SpectralDecomposition::compute(hamiltonian(g, convention));
    const WalkerState psi0 = WalkerState::uniform_superposition(g.n);
    if (t_max == 0.0) return make_result("ctqw-quadrature", psi0.probabilities());
    if (dt <= 0.0) throw InputError("quadrature: dt must be > 0");
    const double radius = spec.spectral_radius();
    if (radius > 0.0 && dt > M_PI / (8.0 * radius))
        throw InputError("quadrature: dt too coarse; need dt <= pi/(8*lambda_max) = " +
                         std::to_string(M_PI / (8.0 * radius)));
    const long long steps = std::max<long long>(1, std::llround(t_max / dt));
    const double h = t_max / static_cast<double>(steps);
    Eigen::VectorXd accum = 0.5 * psi0.probabilities();
    for (long long i = 1; i < steps; ++i)
        accum += evolve(spec, psi0, h * static_cast<double>(i)).probabilities();
    accum += 0.5 * evolve(spec, psi0, t_max).probabilities();
    accum /= static_cast<double>(steps);
    return make_result("ctqw-quadrature", std::move(accum));
}

ProbabilityTrace probability_trace(const SpectralDecomposition& spec, const WalkerState& psi0,
                                   double t_max, double dt) {
    if (t_max < 0.0 || dt <= 0.0) throw InputError("trace: need t_max >= 0 and dt > 0");
    ProbabilityTrace trace;
    const long long steps = std::max<long long>(1, std::llround(t_max / dt));
    const double h = t_max / static_cast<double>(steps);
    for (long long i = 0; i <= steps; ++i) {
        const double t = h * static_cast<double>(i);
        trace.times.push_back(t);
        trace.probabilities.push_back(evolve(spec, psi0, t).probabilities());
    }
    return trace;
}

} // namespace qwc
