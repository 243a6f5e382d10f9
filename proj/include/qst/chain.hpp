#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "qst/errors.hpp"

namespace qst {

/// How the stored couplings enter the Hamiltonian's co-diagonal.
/// The matrix entry is -|J| for `negative_offdiag` and +|J| for
/// `positive_offdiag`; only the magnitude of a stored coupling matters.
enum class SignConvention { negative_offdiag, positive_offdiag };

std::string_view to_string(SignConvention s);
SignConvention sign_convention_from_string(std::string_view s);

/// Single-excitation description of a linear chain: N on-site energies and
/// N-1 nearest-neighbour couplings. Validated on construction, immutable after.
class ChainSpec {
public:
    ChainSpec(std::vector<double> onsite, std::vector<double> couplings,
              SignConvention sign = SignConvention::negative_offdiag);

    std::size_t size() const { return onsite_.size(); }
    const std::vector<double>& onsite() const { return onsite_; }
    const std::vector<double>& couplings() const { return couplings_; }
    SignConvention sign_convention() const { return sign_; }

    /// Co-diagonal entry of the Hamiltonian between sites i and i+1.
    double offdiag(std::size_t i) const {
        const double m = std::abs(couplings_[i]);
        return sign_ == SignConvention::negative_offdiag ? -m : m;
    }

    /// Largest coupling magnitude, the unit of the dimensionless time t*J_max.
    double max_coupling() const;

    ChainSpec with_sign(SignConvention s) const { return ChainSpec(onsite_, couplings_, s); }

private:
    std::vector<double> onsite_;
    std::vector<double> couplings_;
    SignConvention sign_;
};

/// Symmetric tridiagonal matrix held as its two bands.
template <typename Scalar>
struct Tridiagonal {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Vector diag;
    Vector offdiag;  // size() - 1 entries

    Eigen::Index size() const { return diag.size(); }

    Matrix dense() const {
        const Eigen::Index n = diag.size();
        Matrix m = Matrix::Zero(n, n);
        m.diagonal() = diag;
        if (n > 1) {
            m.diagonal(1) = offdiag;
            m.diagonal(-1) = offdiag;
        }
        return m;
    }

    /// Reads the bands of a dense matrix, rejecting anything that is not
    /// symmetric tridiagonal (entries beyond `tol * max|H|`).
    static Tridiagonal from_dense(const Matrix& h, Scalar tol = Scalar(1e-12)) {
        if (h.rows() != h.cols() || h.rows() == 0) {
            throw StructuralError("expected a non-empty square matrix");
        }
        const Scalar scale = std::max(Scalar(1), h.cwiseAbs().maxCoeff());
        const Eigen::Index n = h.rows();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const Scalar a = h(i, j);
                if (std::abs(i - j) > 1 && std::abs(a) > tol * scale) {
                    throw StructuralError("matrix is not tridiagonal");
                }
                if (std::abs(a - h(j, i)) > tol * scale) {
                    throw StructuralError("matrix is not symmetric");
                }
            }
        }
        Tridiagonal t;
        t.diag = h.diagonal();
        t.offdiag = n > 1 ? Vector(h.diagonal(1)) : Vector(0);
        return t;
    }
};

template <typename Scalar = double>
Tridiagonal<Scalar> tridiagonal(const ChainSpec& spec) {
    const auto n = static_cast<Eigen::Index>(spec.size());
    Tridiagonal<Scalar> t;
    t.diag.resize(n);
    t.offdiag.resize(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) t.diag(i) = static_cast<Scalar>(spec.onsite()[i]);
    for (Eigen::Index i = 0; i + 1 < n; ++i) t.offdiag(i) = static_cast<Scalar>(spec.offdiag(i));
    return t;
}

/// Dense single-excitation Hamiltonian of the chain.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> build_hamiltonian(const ChainSpec& spec) {
    return tridiagonal<Scalar>(spec).dense();
}

/// Anti-diagonal permutation M_ij = delta_{i, N+1-j}.
struct MirrorOperator {
    Eigen::Index n = 0;

    template <typename Derived>
    auto apply(const Eigen::MatrixBase<Derived>& v) const {
        return v.colwise().reverse().eval();
    }

    template <typename Scalar = double>
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix() const {
        using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
        return M::Identity(n, n).rowwise().reverse();
    }
};

struct MirrorCheck {
    bool symmetric = false;
    double max_violation = 0.0;
};

inline constexpr double kMirrorTolerance = 1e-9;

/// Palindromic test on the on-site profile and the co-diagonal entries.
MirrorCheck check_mirror_symmetry(const ChainSpec& spec, double tol = kMirrorTolerance);

}  // namespace qst
