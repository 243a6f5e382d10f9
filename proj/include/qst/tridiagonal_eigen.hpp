#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <type_traits>
#include <vector>

#include "qst/chain.hpp"
#include "qst/errors.hpp"

namespace qst {

/// Eigenvalues in ascending order and the matching orthonormal eigenvectors
/// (column k belongs to values(k)). Each eigenvector's first non-negligible
/// component is positive.
template <typename Scalar = double>
struct EigenSystem {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Vector values;
    Matrix vectors;

    Eigen::Index size() const { return values.size(); }
};

namespace detail {

template <typename Scalar>
std::string echo_bands(const Tridiagonal<Scalar>& t) {
    std::ostringstream os;
    os.precision(17);
    os << "diag=[";
    for (Eigen::Index i = 0; i < t.diag.size(); ++i) os << (i ? "," : "") << t.diag(i);
    os << "] offdiag=[";
    for (Eigen::Index i = 0; i < t.offdiag.size(); ++i) os << (i ? "," : "") << t.offdiag(i);
    os << "]";
    return os.str();
}

}  // namespace detail

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix,
/// accumulating the rotations into the eigenvector matrix. The total number
/// of QL sweeps is capped at 30*N.
template <typename Scalar>
EigenSystem<Scalar> eigendecompose(const Tridiagonal<Scalar>& t) {
    using Vector = typename EigenSystem<Scalar>::Vector;
    using Matrix = typename EigenSystem<Scalar>::Matrix;
    const Eigen::Index n = t.size();
    if (n == 0) throw StructuralError("cannot diagonalize an empty matrix");
    if (t.offdiag.size() != n - 1) throw StructuralError("co-diagonal must have N-1 entries");

    Vector d = t.diag;
    Vector e = Vector::Zero(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) e(i) = t.offdiag(i);
    Matrix z = Matrix::Identity(n, n);

    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const long cap = 30L * static_cast<long>(n);
    long sweeps = 0;

    for (Eigen::Index l = 0; l < n; ++l) {
        Eigen::Index m = l;
        do {
            for (m = l; m + 1 < n; ++m) {
                const Scalar dd = std::abs(d(m)) + std::abs(d(m + 1));
                if (std::abs(e(m)) <= eps * dd) break;
            }
            if (m == l) break;
            if (++sweeps > cap) {
                throw NumericalError("tridiagonal QL did not converge within " + std::to_string(cap) +
                                     " sweeps; " + detail::echo_bands(t));
            }
            Scalar g = (d(l + 1) - d(l)) / (Scalar(2) * e(l));
            Scalar r = std::hypot(g, Scalar(1));
            g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
            Scalar s = 1, c = 1, p = 0;
            Eigen::Index i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                const Scalar f = s * e(i);
                const Scalar b = c * e(i);
                r = std::hypot(f, g);
                e(i + 1) = r;
                if (r == Scalar(0)) {
                    d(i + 1) -= p;
                    e(m) = 0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d(i + 1) - p;
                r = (d(i) - g) * s + Scalar(2) * c * b;
                p = s * r;
                d(i + 1) = g + p;
                g = c * r - b;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar zk = z(k, i + 1);
                    z(k, i + 1) = s * z(k, i) + c * zk;
                    z(k, i) = c * z(k, i) - s * zk;
                }
            }
            if (underflow) continue;
            d(l) -= p;
            e(l) = g;
            e(m) = 0;
        } while (m != l);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return d(a) < d(b); });

    EigenSystem<Scalar> es;
    es.values.resize(n);
    es.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        es.values(k) = d(order[static_cast<std::size_t>(k)]);
        es.vectors.col(k) = z.col(order[static_cast<std::size_t>(k)]);
        const Scalar floor = Scalar(100) * eps * es.vectors.col(k).cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < n; ++i) {
            const Scalar v = es.vectors(i, k);
            if (std::abs(v) > floor) {
                if (v < 0) es.vectors.col(k) *= Scalar(-1);
                break;
            }
        }
    }
    return es;
}

/// Dense entry point; the matrix must be symmetric tridiagonal.
template <typename Derived>
    requires std::is_base_of_v<Eigen::MatrixBase<Derived>, Derived>
auto eigendecompose(const Eigen::MatrixBase<Derived>& h) {
    using Scalar = typename Derived::Scalar;
    return eigendecompose(Tridiagonal<Scalar>::from_dense(h.eval()));
}

template <typename Scalar = double>
EigenSystem<Scalar> eigendecompose(const ChainSpec& spec) {
    return eigendecompose(tridiagonal<Scalar>(spec));
}

/// Mirror parity (+1 even, -1 odd) of each eigenstate. Throws ContractError
/// when an eigenvector is not an eigenvector of M, i.e. the underlying chain
/// is not mirror-symmetric.
template <typename Scalar>
std::vector<int> eigenstate_parity(const EigenSystem<Scalar>& es, const MirrorOperator& mirror,
                                   Scalar tol = Scalar(1e-8)) {
    if (mirror.n != es.size()) throw StructuralError("mirror operator dimension mismatch");
    std::vector<int> parity;
    parity.reserve(static_cast<std::size_t>(es.size()));
    for (Eigen::Index k = 0; k < es.size(); ++k) {
        const auto v = es.vectors.col(k);
        const Scalar overlap = v.dot(mirror.apply(v));
        if (std::abs(std::abs(overlap) - Scalar(1)) > tol) {
            throw ContractError("eigenstate " + std::to_string(k) +
                                " has no definite mirror parity; chain is not mirror-symmetric");
        }
        parity.push_back(overlap > 0 ? 1 : -1);
    }
    return parity;
}

}  // namespace qst
