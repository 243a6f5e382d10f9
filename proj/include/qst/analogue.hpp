#pragma once

#include <Eigen/Dense>

#include <vector>

#include "qst/chain.hpp"
#include "qst/tridiagonal_eigen.hpp"

namespace qst {

/// Residual of -J phi'' + (eps_i - 2J) phi = lambda phi at interior sites
/// (lattice spacing 1, J = -offdiag). Rows are eigenstates, columns the
/// sites 2..N-1; an N=2 chain gives an N x 0 matrix. Requires uniform
/// couplings (within 1e-9).
Eigen::MatrixXd schrodinger_residual(const ChainSpec& spec, const EigenSystem<double>& es);

/// Sign changes along each eigenvector. Components with magnitude at most
/// 1e-12 take the sign of the previous non-zero component.
std::vector<int> node_count(const EigenSystem<double>& es);

/// Raising/lowering pair in the energy eigenbasis for a pinched spectrum with
/// spacing gamma. `raising` includes the overall sqrt(gamma) factor, so
/// raising * lowering is the ground-shifted Hamiltonian itself and the
/// commutator carries one power of gamma.
struct LadderPair {
    Eigen::MatrixXd raising;
    Eigen::MatrixXd lowering;
    double gamma = 1.0;
    int p = 1;

    /// a^dagger a, which equals gamma times the dimensionless number operator.
    Eigen::MatrixXd number() const { return raising * lowering; }
    Eigen::MatrixXd commutator() const { return lowering * raising - raising * lowering; }
    /// gamma (I - (1-1/p)|N-2><N-2| - (N-1+1/p)|N-1><N-1|).
    Eigen::MatrixXd commutator_closed_form() const;
};

/// Checks the eigenvalues against gamma * {0, 1, ..., N-2, N-2+1/p} above the
/// ground state (to 1e-6 * gamma), else ContractError.
LadderPair build_ladder(const EigenSystem<double>& es, int p, double gamma);

/// max |(H - lambda_0) - V a^dagger a V^T| in the site basis.
double ladder_residual(const LadderPair& ladder, const ChainSpec& spec, const EigenSystem<double>& es);

struct PositionOperator {
    Eigen::MatrixXd x;         // (a^dagger + a) / 2
    Eigen::MatrixXcd momentum; // (a - a^dagger) / 2i
};

PositionOperator position_operator(const LadderPair& ladder);

/// Closed-form X matrix elements in the eigenbasis.
Eigen::MatrixXd position_closed_form(Eigen::Index n, int p, double gamma);

/// V^T M V: the mirror operator expressed in the energy eigenbasis.
Eigen::MatrixXd mirror_in_eigenbasis(const EigenSystem<double>& es);

struct PairingReport {
    bool anticommutes = false;
    double anticommutator_residual = 0.0;
    Eigen::VectorXd x_values;       // ascending eigenvalues of X
    std::vector<double> x_pairs;    // positive members of each (x, -x) pair
    double pairing_residual = 0.0;  // max |x_k + x_{N-1-k}|
    bool zero_mode = false;
};

/// {X, M} = 0 to 1e-10, X spectrum symmetric to 1e-9, zero mode when some
/// eigenvalue has |x| <= 1e-9.
PairingReport pairing_check(const PositionOperator& x, const Eigen::MatrixXd& mirror_eigenbasis);

}  // namespace qst
