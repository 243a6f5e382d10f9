#pragma once

#include <Eigen/Dense>

#include <vector>

#include "qst/chain.hpp"
#include "qst/spectra.hpp"

namespace qst {

/// Discrete inner-product weights w_k = prod_{j != k} 1/|lambda_k - lambda_j|.
struct WeightSet {
    Eigen::VectorXd weights;
};

/// Polynomials of the reconstruction evaluated on the spectrum.
///
/// Row j holds q_j(lambda_k) = P_j(lambda_k) / ||P_j||, the normalised monic
/// polynomial of stage j, and `norms_sq(j)` carries ||P_j||^2 in the weighted
/// inner product, so P_j(lambda_k) = q_j(lambda_k) * sqrt(norms_sq(j)).
struct PolynomialTable {
    Eigen::MatrixXd normalized;  // (stages) x N
    Eigen::VectorXd norms_sq;

    double value(Eigen::Index stage, Eigen::Index k) const {
        return normalized(stage, k) * std::sqrt(norms_sq(stage));
    }
    /// Strict sign changes of P_stage across ascending eigenvalues; entries
    /// below 1e-12 of the row's largest magnitude are skipped.
    int sign_changes(Eigen::Index stage) const;
};

/// Requires a simple spectrum (min gap > 1e-12 * range), else ContractError.
WeightSet compute_weights(const Spectrum& s);

struct Reconstruction {
    ChainSpec chain;
    PolynomialTable table;
    Eigen::VectorXd forward_onsite;     // full forward pass, cross-check only
    Eigen::VectorXd forward_couplings;  // magnitudes
    double mirror_discrepancy = 0.0;    // max |forward - mirrored| entry
};

inline constexpr double kMirrorCrossCheck = 1e-8;

/// Persymmetric Jacobi chain with the given spectrum. The first half of the
/// entries comes from the three-term recurrence and is mirrored onto the
/// second half; a full forward pass must agree with the mirror image.
Reconstruction reconstruct_detailed(const Spectrum& s,
                                    SignConvention sign = SignConvention::negative_offdiag);

ChainSpec reconstruct(const Spectrum& s, SignConvention sign = SignConvention::negative_offdiag);

/// max |lambda_in - lambda_out| after reconstructing and rediagonalising.
double roundtrip_error(const Spectrum& s);

}  // namespace qst
