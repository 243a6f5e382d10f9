#include "qst/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qst/errors.hpp"
#include "qst/tridiagonal_eigen.hpp"

namespace qst {

namespace {

Eigen::VectorXd log_weights(const Spectrum& s) {
    const Eigen::Index n = s.size();
    if (n < 1) throw ContractError("empty spectrum");
    if (n > 1 && !(s.gaps().minCoeff() > 1e-12 * s.range())) {
        throw ContractError("spectrum is not simple; weights and reconstruction are undefined");
    }
    Eigen::VectorXd lw(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != k) acc -= std::log(std::abs(s[k] - s[j]));
        }
        lw(k) = acc;
    }
    return lw;
}

}  // namespace

int PolynomialTable::sign_changes(Eigen::Index stage) const {
    const auto row = normalized.row(stage);
    const double floor = 1e-12 * row.cwiseAbs().maxCoeff();
    int changes = 0, prev = 0;
    for (Eigen::Index k = 0; k < row.size(); ++k) {
        if (std::abs(row(k)) <= floor) continue;
        const int sgn = row(k) > 0 ? 1 : -1;
        if (prev != 0 && sgn != prev) ++changes;
        prev = sgn;
    }
    return changes;
}

WeightSet compute_weights(const Spectrum& s) {
    return {log_weights(s).array().exp().matrix()};
}

Reconstruction reconstruct_detailed(const Spectrum& s, SignConvention sign) {
    const Eigen::Index n = s.size();
    if (n < 2) throw ContractError("reconstruction needs at least 2 eigenvalues");
    const Eigen::VectorXd lw = log_weights(s);
    const Eigen::VectorXd& lambda = s.values();

    // Probability weights omega = w / sum(w); the Lanczos vectors
    // u_j(k) = sqrt(omega_k) q_j(lambda_k) stay orthonormal throughout.
    const double lmax = lw.maxCoeff();
    Eigen::VectorXd omega = (lw.array() - lmax).exp().matrix();
    const double partial = omega.sum();
    omega /= partial;
    const double log_total = lmax + std::log(partial);

    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    u.col(0) = omega.cwiseSqrt();
    Eigen::VectorXd diag(n), beta(n - 1);
    Eigen::VectorXd norms_sq(n);
    norms_sq(0) = std::exp(log_total);

    const double scale = std::max({std::abs(lambda(0)), std::abs(lambda(n - 1)), s.range()});
    for (Eigen::Index j = 0; j < n; ++j) {
        diag(j) = lambda.dot(u.col(j).cwiseAbs2());
        if (j + 1 == n) break;
        Eigen::VectorXd r = lambda.cwiseProduct(u.col(j)) - diag(j) * u.col(j);
        if (j > 0) r -= beta(j - 1) * u.col(j - 1);
        // Full reorthogonalisation, applied twice.
        for (int pass = 0; pass < 2; ++pass) {
            const auto basis = u.leftCols(j + 1);
            r -= basis * (basis.transpose() * r);
        }
        const double b = r.norm();
        if (!(b > 1e-13 * scale)) {
            throw NumericalError("three-term recurrence broke down at stage " + std::to_string(j + 1) +
                                 " (non-positive norm ratio)");
        }
        beta(j) = b;
        norms_sq(j + 1) = norms_sq(j) * b * b;
        u.col(j + 1) = r / b;
    }

    Reconstruction rec{ChainSpec({0.0, 0.0}, {1.0}), {}, diag, beta, 0.0};
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(diag(i) - diag(n - 1 - i)));
    for (Eigen::Index i = 0; i + 1 < n; ++i) worst = std::max(worst, std::abs(beta(i) - beta(n - 2 - i)));
    rec.mirror_discrepancy = worst;
    if (worst > kMirrorCrossCheck * scale) {
        throw NumericalError("forward pass disagrees with mirrored half-chain by " + std::to_string(worst));
    }

    std::vector<double> onsite(static_cast<std::size_t>(n)), couplings(static_cast<std::size_t>(n - 1));
    for (Eigen::Index i = 0; i < (n + 1) / 2; ++i) {
        onsite[static_cast<std::size_t>(i)] = diag(i);
        onsite[static_cast<std::size_t>(n - 1 - i)] = diag(i);
    }
    for (Eigen::Index i = 0; i < n / 2; ++i) {
        const double j = sign == SignConvention::negative_offdiag ? -beta(i) : beta(i);
        couplings[static_cast<std::size_t>(i)] = j;
        couplings[static_cast<std::size_t>(n - 2 - i)] = j;
    }
    rec.chain = ChainSpec(std::move(onsite), std::move(couplings), sign);

    rec.table.normalized.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            rec.table.normalized(j, k) = u(k, j) * std::exp(-0.5 * lw(k));
        }
    }
    rec.table.norms_sq = norms_sq;
    return rec;
}

ChainSpec reconstruct(const Spectrum& s, SignConvention sign) { return reconstruct_detailed(s, sign).chain; }

double roundtrip_error(const Spectrum& s) {
    const auto es = eigendecompose(reconstruct(s));
    return (es.values - s.values()).cwiseAbs().maxCoeff();
}

}  // namespace qst
