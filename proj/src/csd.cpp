#include "qwc/csd.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/SVD>

#include "qwc/ctqw.hpp"
#include "qwc/errors.hpp"
#include "qwc/graph.hpp"

namespace qwc {

using Complex = std::complex<double>;

double unitarity_residual(const Eigen::MatrixXcd& u) {
    const int d = static_cast<int>(u.rows());
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).norm();
}

double phase_aligned_distance(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& u) {
    // min_phi ||e^{i phi} M - U||_F^2 = ||M||^2 + ||U||^2 - 2 |tr(M^dag U)|
    const double cross = std::abs((m.adjoint() * u).trace());
    const double val = m.squaredNorm() + u.squaredNorm() - 2.0 * cross;
    return std::sqrt(std::max(0.0, val));
}

Eigen::MatrixXd cs_matrix(const Eigen::VectorXd& thetas) {
    const int p = static_cast<int>(thetas.size());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * p, 2 * p);
    for (int i = 0; i < p; ++i) {
        const double c = std::cos(thetas(i));
        const double sn = std::sin(thetas(i));
        s(i, i) = c;
        s(i, i + p) = sn;
        s(i + p, i) = -sn;
        s(i + p, i + p) = c;
    }
    return s;
}

Eigen::MatrixXcd CsdFactorization::reconstruct() const {
    const int p = dimension / 2;
    Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(dimension, dimension);
    Eigen::MatrixXcd right = Eigen::MatrixXcd::Zero(dimension, dimension);
    left.topLeftCorner(p, p) = L;
    left.bottomRightCorner(p, p) = L_prime;
    right.topLeftCorner(p, p) = R;
    right.bottomRightCorner(p, p) = R_prime;
    return left * cs_matrix(thetas) * right;
}

CsdFactorization csd_blocks(const Eigen::MatrixXcd& u) {
    const int d = static_cast<int>(u.rows());
    if (d < 2 || d % 2 != 0 || u.cols() != d)
        throw InputError("csd: matrix must be square with even dimension");
    const double ures = unitarity_residual(u);
    if (ures > 1e-8)
        throw NumericError("csd: input is not unitary, residual " + std::to_string(ures));
    const int p = d / 2;

    // SVD of the top-left block seeds the cosines. Reversing to ascending
    // singular values makes the angles descending, which puts the vanishing
    // angle last in the reduced single-angle case.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u.topLeftCorner(p, p),
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXcd l = svd.matrixU().rowwise().reverse();
    Eigen::MatrixXcd r = svd.matrixV().rowwise().reverse().adjoint();
    Eigen::VectorXd cosv = svd.singularValues().reverse();
    for (int i = 0; i < p; ++i) cosv(i) = std::min(cosv(i), 1.0);

    // Z = U21 R^dag = -L' S; its columns are orthogonal with norms sin(theta)
    const Eigen::MatrixXcd z = u.bottomLeftCorner(p, p) * r.adjoint();
    Eigen::VectorXd thetas(p);
    for (int i = 0; i < p; ++i) thetas(i) = std::atan2(z.col(i).norm(), cosv(i));

    constexpr double kSinTol = 1e-9;
    Eigen::MatrixXcd l_prime = Eigen::MatrixXcd::Zero(p, p);
    std::vector<int> fixed;
    for (int i = 0; i < p; ++i) {
        if (std::sin(thetas(i)) > kSinTol) {
            l_prime.col(i) = -z.col(i) / z.col(i).norm();
            fixed.push_back(i);
        }
    }
    // complete the remaining columns to an orthonormal basis
    for (int i = 0; i < p; ++i) {
        if (std::sin(thetas(i)) > kSinTol) continue;
        for (int e = 0; e < p; ++e) {
            Eigen::VectorXcd cand = Eigen::VectorXcd::Zero(p);
            cand(e) = 1.0;
            for (int j : fixed) cand -= l_prime.col(j) * (l_prime.col(j).adjoint() * cand);
            const double nrm = cand.norm();
            if (nrm > 0.5) {
                l_prime.col(i) = cand / nrm;
                break;
            }
        }
        fixed.push_back(i);
    }

    // R' rows from whichever of the cosine / sine routes is well conditioned
    const Eigen::MatrixXcd from_c = l_prime.adjoint() * u.bottomRightCorner(p, p);
    const Eigen::MatrixXcd from_s = l.adjoint() * u.topRightCorner(p, p);
    Eigen::MatrixXcd r_prime(p, p);
    for (int i = 0; i < p; ++i) {
        const double c = std::cos(thetas(i));
        const double sn = std::sin(thetas(i));
        if (c >= sn)
            r_prime.row(i) = from_c.row(i) / c;
        else
            r_prime.row(i) = from_s.row(i) / sn;
    }

    CsdFactorization f;
    f.dimension = d;
    f.thetas = std::move(thetas);
    f.L = std::move(l);
    f.L_prime = std::move(l_prime);
    f.R = std::move(r);
    f.R_prime = std::move(r_prime);
    return f;
}

CsdFactorization csd_4x4(const Eigen::MatrixXcd& u) {
    if (u.rows() != 4 || u.cols() != 4) throw InputError("csd_4x4: matrix must be 4x4");
    return csd_blocks(u);
}

Eigen::MatrixXcd CsdTree::reconstruct() const {
    if (is_leaf()) return leaf;
    CsdFactorization f = *fact;
    f.L = children[0]->reconstruct();
    f.L_prime = children[1]->reconstruct();
    f.R = children[2]->reconstruct();
    f.R_prime = children[3]->reconstruct();
    return f.reconstruct();
}

std::unique_ptr<CsdTree> csd_recursive(const Eigen::MatrixXcd& u) {
    const int d = static_cast<int>(u.rows());
    if (d < 2 || (d & (d - 1)) != 0 || u.cols() != d)
        throw InputError("csd_recursive: dimension must be a power of two >= 2");
    auto node = std::make_unique<CsdTree>();
    node->dimension = d;
    if (d == 2) {
        const double ures = unitarity_residual(u);
        if (ures > 1e-8)
            throw NumericError("csd: input is not unitary, residual " + std::to_string(ures));
        node->leaf = u;
        return node;
    }
    node->fact = std::make_unique<CsdFactorization>(csd_blocks(u));
    node->children[0] = csd_recursive(node->fact->L);
    node->children[1] = csd_recursive(node->fact->L_prime);
    node->children[2] = csd_recursive(node->fact->R);
    node->children[3] = csd_recursive(node->fact->R_prime);
    return node;
}

namespace {
Eigen::Matrix2cd ket_bra(int k) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(k, k) = 1.0;
    return m;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Eigen::Matrix2cd rotation2(double theta) {
    Eigen::Matrix2cd s;
    s << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return s;
}
} // namespace

Eigen::Matrix4cd TwoQubitForm::assemble_left() const {
    return kron2(ket_bra(0), L) + kron2(ket_bra(1), L_prime);
}

Eigen::Matrix4cd TwoQubitForm::assemble_cs() const {
    return kron2(S_even, ket_bra(0)) + kron2(S_odd, ket_bra(1));
}

Eigen::Matrix4cd TwoQubitForm::assemble_right() const {
    return kron2(ket_bra(0), R) + kron2(ket_bra(1), R_prime);
}

TwoQubitForm to_two_qubit_form(const CsdFactorization& f) {
    if (f.dimension != 4)
        throw InputError("to_two_qubit_form: factorization must be 4-dimensional");
    TwoQubitForm t;
    t.L = f.L;
    t.L_prime = f.L_prime;
    t.R = f.R;
    t.R_prime = f.R_prime;
    t.S_even = rotation2(f.thetas(0));
    t.S_odd = rotation2(f.thetas(1));
    return t;
}

ReferenceStepFactors reference_step_factors(int k) {
    if (k < 1 || k > 8) throw InputError("reference factors defined for k = 1..8");
    const Complex i(0.0, 1.0);
    auto m2 = [](Complex a, Complex b, Complex c, Complex d) {
        Eigen::Matrix2cd m;
        m << a, b, c, d;
        return m;
    };
    ReferenceStepFactors f;
    const Eigen::Matrix2cd lp1 = m2(0.7071, -0.7071, 0.7071, 0.7071);
    const Eigen::Matrix2cd rp1 = m2(0.7071, 0.7071, -0.7071, 0.7071);
    const Eigen::Matrix2cd rp6 = m2(-0.7071, -0.7071, -0.7071, 0.7071);
    switch (k) {
        case 1:
            f.L = m2(-0.9936 * i, -0.1132 * i, -0.1132, 0.9936);
            f.R = m2(0.9936 * i, 0.1132, -0.1132 * i, 0.9936);
            break;
        case 2:
            f.L = m2(-0.9730 * i, -0.2307 * i, -0.2307, 0.9730);
            f.R = m2(0.9730 * i, 0.2307, -0.2307 * i, 0.9730);
            break;
        case 3:
            f.L = m2(-0.9341 * i, -0.3569 * i, -0.3569, 0.9341);
            f.R = m2(0.9341 * i, 0.3569, -0.3569 * i, 0.9341);
            break;
        case 4:
            f.L = m2(-0.8686 * i, 0.4955, -0.4955, 0.8686 * i);
            f.R = m2(0.8686 * i, 0.4955, -0.4955, -0.8686 * i);
            break;
        case 5:
            f.L = m2(-0.7618 * i, -0.6478 * i, -0.6478, 0.7618);
            f.R = m2(0.7618 * i, 0.6478, -0.6478 * i, 0.7618);
            break;
        case 6:
            f.L = m2(0.5926 * i, 0.8055 * i, 0.8055, -0.5926);
            f.R = m2(0.5926 * i, 0.8055, 0.8055 * i, -0.5926);
            break;
        case 7:
            f.L = m2(0.3415 * i, -0.9399 * i, 0.9399, 0.3415);
            f.R = m2(0.3415 * i, 0.9399, -0.9399 * i, 0.3415);
            break;
        case 8:
            f.L = m2(0.0207 * i, -0.9998, 0.9998, -0.0207 * i);
            f.R = m2(0.0207 * i, 0.9998, 0.9998, 0.0207 * i);
            break;
    }
    f.L_prime = lp1;
    f.R_prime = k <= 5 ? rp1 : rp6;
    return f;
}

namespace {
Eigen::MatrixXcd star4_propagator(double t) {
    const Graph star = Graph::from_edges({{0, 1}, {0, 2}, {0, 3}}, 4);
    const SpectralDecomposition spec =
        SpectralDecomposition::compute(hamiltonian(star, Hamiltonian::Adjacency));
    return propagator(spec, t);
}

double reference_fit_residual(const ReferenceStepFactors& f, const Eigen::MatrixXcd& target,
                              double theta) {
    CsdFactorization fact;
    fact.dimension = 4;
    fact.thetas = Eigen::Vector2d(theta, 0.0);
    fact.L = f.L;
    fact.L_prime = f.L_prime;
    fact.R = f.R;
    fact.R_prime = f.R_prime;
    return phase_aligned_distance(fact.reconstruct(), target);
}
} // namespace

FactorVerification verify_reference_factors(int k, double delta_t) {
    const ReferenceStepFactors f = reference_step_factors(k);
    FactorVerification v;
    v.k = k;
    v.block_unitarity = {unitarity_residual(f.L), unitarity_residual(f.L_prime),
                         unitarity_residual(f.R), unitarity_residual(f.R_prime)};
    v.unitarity_ok = true;
    for (double r : v.block_unitarity)
        if (r > 5e-4) v.unitarity_ok = false;

    const Eigen::MatrixXcd target = star4_propagator(k * delta_t);
    // coarse scan then golden-section refinement
    double best_theta = 0.0, best = std::numeric_limits<double>::infinity();
    constexpr int kScan = 2000;
    for (int s = 0; s <= kScan; ++s) {
        const double theta = (M_PI / 2.0) * s / kScan;
        const double r = reference_fit_residual(f, target, theta);
        if (r < best) {
            best = r;
            best_theta = theta;
        }
    }
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(0.0, best_theta - M_PI / kScan);
    double hi = std::min(M_PI / 2.0, best_theta + M_PI / kScan);
    double x1 = hi - golden * (hi - lo);
    double x2 = lo + golden * (hi - lo);
    double f1 = reference_fit_residual(f, target, x1);
    double f2 = reference_fit_residual(f, target, x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = reference_fit_residual(f, target, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = reference_fit_residual(f, target, x2);
        }
    }
    const double mid = (lo + hi) / 2.0;
    const double fm = reference_fit_residual(f, target, mid);
    if (fm < best) {
        best = fm;
        best_theta = mid;
    }
    v.theta_best = best_theta;
    v.residual_best = best;
    v.reconstruction_ok = best <= 5e-3;
    return v;
}

} // namespace qwc
