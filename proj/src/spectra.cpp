#include "qst/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qst/errors.hpp"

namespace qst {

namespace {

void require_odd(int p) {
    if (p < 1 || p % 2 == 0) throw ContractError("pinch p must be an odd positive integer, got " + std::to_string(p));
}

}  // namespace

Spectrum::Spectrum(Eigen::VectorXd values) : values_(std::move(values)) {
    if (values_.size() == 0) throw ContractError("empty spectrum");
    std::sort(values_.data(), values_.data() + values_.size());
    for (Eigen::Index k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_(k))) throw ContractError("non-finite eigenvalue");
        if (k > 0 && values_(k) == values_(k - 1)) {
            throw ContractError("repeated eigenvalue " + std::to_string(values_(k)));
        }
    }
}

Spectrum::Spectrum(const std::vector<double>& values)
    : Spectrum(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()))) {}

Eigen::VectorXd Spectrum::gaps() const {
    const Eigen::Index n = size();
    if (n < 2) return Eigen::VectorXd(0);
    return values_.tail(n - 1) - values_.head(n - 1);
}

Spectrum pinched_spectrum(const PinchSpec& ps, double shift) {
    require_odd(ps.p);
    if (ps.n < 2) throw ContractError("pinched spectrum needs N >= 2");
    if (!(ps.alpha > 0.0)) throw ContractError("pinched spectrum needs alpha > 0");
    Eigen::VectorXd v(ps.n);
    for (int k = 0; k + 1 < ps.n; ++k) v(k) = ps.alpha * ((1 - ps.n) + 2 * k) + shift;
    v(ps.n - 1) = v(ps.n - 2) + 2.0 * ps.alpha / ps.p;
    Spectrum s(std::move(v));
    s.p = ps.p;
    s.alpha = ps.alpha;
    s.t_m = ps.p * std::numbers::pi / (2.0 * ps.alpha);
    return s;
}

PstCheck check_pst_condition(const Spectrum& s, double tol) {
    if (s.size() < 2) throw ContractError("PST condition needs at least 2 eigenvalues");
    const Eigen::VectorXd gaps = s.gaps();
    const double g = gaps.minCoeff();
    const double mean = gaps.mean();

    PstCheck best;
    best.residual = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= kMaxOddDivisor; ++m) {
        const double delta = g / (2 * m - 1);
        PstCheck c;
        c.delta = delta;
        c.t_m = std::numbers::pi / delta;
        c.residual = 0.0;
        for (Eigen::Index k = 0; k < gaps.size(); ++k) {
            const double ratio = gaps(k) / delta;
            const long odd = 2 * std::lround((ratio - 1.0) / 2.0) + 1;
            c.odd_integers.push_back(odd);
            c.residual = std::max(c.residual, std::abs(gaps(k) - odd * delta) / mean);
        }
        if (c.residual <= tol) {
            c.valid = true;
            return c;
        }
        if (c.residual < best.residual) best = std::move(c);
    }
    return best;
}

Spectrum snap_to_pst(const Spectrum& s, int p) {
    require_odd(p);
    const Eigen::Index n = s.size();
    if (n < 3) throw ContractError("snapping needs at least 3 eigenvalues");
    Eigen::MatrixXd design(n, 2);
    for (Eigen::Index k = 0; k < n; ++k) {
        design(k, 0) = 1.0;
        design(k, 1) = k + 1 < n ? static_cast<double>(k) : static_cast<double>(n - 2) + 1.0 / p;
    }
    const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(s.values());
    const double gamma = fit(1);
    if (!(gamma > 0.0)) throw ContractError("degenerate pinched fit (non-positive spacing)");
    Spectrum out(Eigen::VectorXd(design * fit));
    out.p = p;
    out.alpha = gamma / 2.0;
    out.t_m = p * std::numbers::pi / gamma;
    return out;
}

bool spectral_symmetry_check(const Spectrum& s, double tol) {
    const Eigen::Index n = s.size();
    const double centre = s[0] + s[n - 1];
    const double scale = std::max(1.0, s.range());
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(s[k] + s[n - 1 - k] - centre) > tol * scale) return false;
    }
    return true;
}

}  // namespace qst
