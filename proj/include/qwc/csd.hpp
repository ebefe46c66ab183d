#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace qwc {

/// Cosine-sine factorization U = diag(L, L') * S(thetas) * diag(R, R') of a
/// d x d unitary, d even. S pairs mode i with mode i + d/2 by a rotation of
/// angle thetas[i]; angles are in [0, pi/2] ordered descending, so a 4 x 4
/// with the reduced single-angle form has thetas[1] == 0.
struct CsdFactorization {
    int dimension = 0;
    Eigen::VectorXd thetas;   // length d/2
    Eigen::MatrixXcd L, L_prime, R, R_prime; // (d/2) x (d/2) unitaries

    Eigen::MatrixXcd reconstruct() const;
};

/// The orthogonal cosine-sine matrix S(thetas).
Eigen::MatrixXd cs_matrix(const Eigen::VectorXd& thetas);

/// CSD of an even-dimensional unitary (input unitarity checked to 1e-8).
CsdFactorization csd_blocks(const Eigen::MatrixXcd& u);

/// CSD of a 4 x 4 unitary; csd_blocks with a dimension check.
CsdFactorization csd_4x4(const Eigen::MatrixXcd& u);

/// Recursive CSD of a 2^n x 2^n unitary: blocks are decomposed further until
/// every leaf is a 2 x 2 unitary.
struct CsdTree {
    // leaf: dimension == 2, unitary set, no factorization
    int dimension = 0;
    Eigen::MatrixXcd leaf;
    std::unique_ptr<CsdFactorization> fact;
    std::array<std::unique_ptr<CsdTree>, 4> children; // L, L', R, R'

    bool is_leaf() const { return dimension == 2; }
    Eigen::MatrixXcd reconstruct() const;
};

std::unique_ptr<CsdTree> csd_recursive(const Eigen::MatrixXcd& u);

/// The three controlled two-qubit operations of a 4 x 4 CSD under the
/// encoding |0> = |00>, |1> = |01>, |2> = |10>, |3> = |11> (first qubit =
/// index bit 1, second qubit = index bit 0). L/R blocks are controlled on
/// the first qubit; the CS rotation is controlled on the second qubit with
/// the first as target - note the control asymmetry.
struct TwoQubitForm {
    Eigen::Matrix2cd L, L_prime;       // target: second qubit, control: first
    Eigen::Matrix2cd S_even, S_odd;    // target: first qubit, control: second
    Eigen::Matrix2cd R, R_prime;

    Eigen::Matrix4cd assemble_left() const;
    Eigen::Matrix4cd assemble_cs() const;
    Eigen::Matrix4cd assemble_right() const;
};

TwoQubitForm to_two_qubit_form(const CsdFactorization& f);

/// Distance min over a global phase of ||e^{i phi} M - U||_F.
double phase_aligned_distance(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& u);

/// ||U^dagger U - I||_F.
double unitarity_residual(const Eigen::MatrixXcd& u);

/// Published reference 2 x 2 factor blocks for the star-graph walk steps
/// k = 1..8 (4-decimal precision).
struct ReferenceStepFactors {
    Eigen::Matrix2cd L, L_prime, R, R_prime;
};

ReferenceStepFactors reference_step_factors(int k);

/// Checks the reference step-k factors: each block's unitarity within 5e-4,
/// and existence of an angle theta (1-D minimization over [0, pi/2], global
/// phase fitted) with ||diag(L,L') S(theta,0) diag(R,R') - U(k*dt)||_F
/// within 5e-3. A miss is reported, not thrown.
struct FactorVerification {
    int k = 0;
    double theta_best = 0.0;
    double residual_best = 0.0;
    std::array<double, 4> block_unitarity{}; // L, L', R, R'
    bool unitarity_ok = false;
    bool reconstruction_ok = false;
};

FactorVerification verify_reference_factors(int k, double delta_t = 9.0 / 40.0);

} // namespace qwc
