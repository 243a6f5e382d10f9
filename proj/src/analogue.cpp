#include "qst/analogue.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "qst/errors.hpp"

namespace qst {

Eigen::MatrixXd schrodinger_residual(const ChainSpec& spec, const EigenSystem<double>& es) {
    const auto n = static_cast<Eigen::Index>(spec.size());
    if (es.size() != n) throw StructuralError("eigensystem and chain differ in size");
    const double j = -spec.offdiag(0);
    for (std::size_t i = 1; i + 1 < spec.size(); ++i) {
        if (std::abs(-spec.offdiag(i) - j) > 1e-9) {
            throw ContractError("discrete Schrodinger form needs uniform couplings");
        }
    }
    Eigen::MatrixXd res(n, std::max<Eigen::Index>(n - 2, 0));
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto phi = es.vectors.col(k);
        for (Eigen::Index i = 1; i + 1 < n; ++i) {
            const double second = phi(i + 1) + phi(i - 1) - 2.0 * phi(i);
            const double eps = spec.onsite()[static_cast<std::size_t>(i)];
            res(k, i - 1) = -j * second + (eps - 2.0 * j) * phi(i) - es.values(k) * phi(i);
        }
    }
    return res;
}

std::vector<int> node_count(const EigenSystem<double>& es) {
    std::vector<int> nodes;
    for (Eigen::Index k = 0; k < es.size(); ++k) {
        int prev = 0, count = 0;
        for (Eigen::Index i = 0; i < es.size(); ++i) {
            const double v = es.vectors(i, k);
            if (std::abs(v) <= 1e-12) continue;
            const int s = v > 0 ? 1 : -1;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        nodes.push_back(count);
    }
    return nodes;
}

Eigen::MatrixXd LadderPair::commutator_closed_form() const {
    const Eigen::Index n = raising.rows();
    Eigen::MatrixXd c = Eigen::MatrixXd::Identity(n, n);
    c(n - 2, n - 2) -= 1.0 - 1.0 / p;
    c(n - 1, n - 1) -= static_cast<double>(n - 1) + 1.0 / p;
    return gamma * c;
}

LadderPair build_ladder(const EigenSystem<double>& es, int p, double gamma) {
    const Eigen::Index n = es.size();
    if (n < 2) throw ContractError("ladder operators need N >= 2");
    if (p < 1 || p % 2 == 0) throw ContractError("pinch p must be odd and positive");
    if (!(gamma > 0.0)) throw ContractError("spacing gamma must be positive");
    for (Eigen::Index k = 0; k < n; ++k) {
        const double level = k + 1 < n ? static_cast<double>(k) : static_cast<double>(n - 2) + 1.0 / p;
        if (std::abs(es.values(k) - es.values(0) - gamma * level) > 1e-6 * gamma) {
            throw ContractError("spectrum is not of pinched form (level " + std::to_string(k) + ")");
        }
    }
    LadderPair lp;
    lp.gamma = gamma;
    lp.p = p;
    lp.raising = Eigen::MatrixXd::Zero(n, n);
    const double root = std::sqrt(gamma);
    for (Eigen::Index k = 0; k + 2 < n; ++k) lp.raising(k + 1, k) = root * std::sqrt(static_cast<double>(k + 1));
    lp.raising(n - 1, n - 2) = root * std::sqrt(static_cast<double>(n - 2) + 1.0 / p);
    lp.lowering = lp.raising.transpose();
    return lp;
}

double ladder_residual(const LadderPair& ladder, const ChainSpec& spec, const EigenSystem<double>& es) {
    const Eigen::Index n = es.size();
    const Eigen::MatrixXd shifted = build_hamiltonian(spec) - es.values(0) * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd rebuilt = es.vectors * ladder.number() * es.vectors.transpose();
    return (shifted - rebuilt).cwiseAbs().maxCoeff();
}

PositionOperator position_operator(const LadderPair& ladder) {
    PositionOperator op;
    op.x = 0.5 * (ladder.raising + ladder.lowering);
    const Eigen::MatrixXcd diff = (ladder.lowering - ladder.raising).cast<std::complex<double>>();
    op.momentum = diff / std::complex<double>(0.0, 2.0);
    return op;
}

Eigen::MatrixXd position_closed_form(Eigen::Index n, int p, double gamma) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
    const double half_root = 0.5 * std::sqrt(gamma);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double end = k == n - 2 ? 1.0 - 1.0 / p : 0.0;
        const double element = half_root * std::sqrt(static_cast<double>(k + 1) - end);
        x(k + 1, k) = element;
        x(k, k + 1) = element;
    }
    return x;
}

Eigen::MatrixXd mirror_in_eigenbasis(const EigenSystem<double>& es) {
    const MirrorOperator m{es.size()};
    return es.vectors.transpose() * m.apply(es.vectors);
}

PairingReport pairing_check(const PositionOperator& op, const Eigen::MatrixXd& mirror) {
    const Eigen::MatrixXd& x = op.x;
    const Eigen::Index n = x.rows();
    if (mirror.rows() != n || mirror.cols() != n) throw StructuralError("mirror and X differ in size");
    PairingReport rep;
    rep.anticommutator_residual = (x * mirror + mirror * x).cwiseAbs().maxCoeff();
    rep.anticommutes = rep.anticommutator_residual <= 1e-10;

    rep.x_values = eigendecompose(Tridiagonal<double>::from_dense(x)).values;
    for (Eigen::Index k = 0; k < n; ++k) {
        rep.pairing_residual = std::max(rep.pairing_residual, std::abs(rep.x_values(k) + rep.x_values(n - 1 - k)));
    }
    for (Eigen::Index k = n - 1; k >= (n + 1) / 2; --k) rep.x_pairs.push_back(rep.x_values(k));
    for (Eigen::Index k = 0; k < n; ++k) rep.zero_mode = rep.zero_mode || std::abs(rep.x_values(k)) <= 1e-9;
    return rep;
}

}  // namespace qst
