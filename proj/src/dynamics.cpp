#include "qst/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qst {

namespace {

constexpr std::size_t kResyncEvery = 64;

}  // namespace

Eigen::VectorXcd propagate(const EigenSystem<double>& es, Eigen::Index initial_site, double t) {
    if (initial_site < 0 || initial_site >= es.size()) {
        throw StructuralError("initial site " + std::to_string(initial_site) + " out of range");
    }
    const Eigen::Index n = es.size();
    Eigen::VectorXcd coeff(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        coeff(k) = std::polar(es.vectors(initial_site, k), -es.values(k) * t);
    }
    return es.vectors.cast<std::complex<double>>() * coeff;
}

std::complex<double> transition_amplitude(const EigenSystem<double>& es, double t) {
    return TransferKernel(es).amplitude(t);
}

double transfer_fidelity(const EigenSystem<double>& es, double t) {
    return std::norm(transition_amplitude(es, t));
}

double average_fidelity(double transfer) {
    constexpr double slack = 1e-12;
    if (!(transfer >= -slack && transfer <= 1.0 + slack)) {
        throw ContractError("transfer fidelity " + std::to_string(transfer) + " outside [0,1]");
    }
    const double a = std::sqrt(std::clamp(transfer, 0.0, 1.0));
    return a / 3.0 + a * a / 6.0 + 0.5;
}

TransferKernel::TransferKernel(const EigenSystem<double>& es) {
    const Eigen::Index n = es.size();
    energies_.resize(static_cast<std::size_t>(n));
    weights_.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        energies_[static_cast<std::size_t>(k)] = es.values(k);
        weights_[static_cast<std::size_t>(k)] = es.vectors(0, k) * es.vectors(n - 1, k);
    }
}

std::complex<double> TransferKernel::amplitude(double t) const {
    std::complex<double> a{0.0, 0.0};
    for (std::size_t k = 0; k < energies_.size(); ++k) {
        a += std::polar(weights_[k], -energies_[k] * t);
    }
    return a;
}

std::vector<double> TransferKernel::scan(double dt, std::size_t count) const {
    const std::size_t n = energies_.size();
    std::vector<std::complex<double>> phase(n), step(n);
    for (std::size_t k = 0; k < n; ++k) step[k] = std::polar(1.0, -energies_[k] * dt);

    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (i % kResyncEvery == 0) {
            const double t = static_cast<double>(i) * dt;
            for (std::size_t k = 0; k < n; ++k) phase[k] = std::polar(weights_[k], -energies_[k] * t);
        }
        std::complex<double> a{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            a += phase[k];
            phase[k] *= step[k];
        }
        out[i] = std::norm(a);
    }
    return out;
}

Peak refine_peak(const TransferKernel& kernel, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = kernel.fidelity(c), fd = kernel.fidelity(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = kernel.fidelity(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = kernel.fidelity(d);
        }
    }
    const double t = 0.5 * (a + b);
    return {t, kernel.fidelity(t)};
}

FidelityTrace trace(const EigenSystem<double>& es, double j_max, double window, std::size_t samples,
                    double peak_floor) {
    if (samples < 2) throw ContractError("a trace needs at least 2 samples");
    if (!(j_max > 0.0) || !(window > 0.0)) throw ContractError("window and J_max must be positive");
    if (es.size() < 2) throw ContractError("transfer needs a chain of at least 2 sites");

    const TransferKernel kernel(es);
    const double dtau = window / static_cast<double>(samples - 1);
    const double dt = dtau / j_max;

    FidelityTrace tr;
    tr.j_max = j_max;
    tr.transfer = kernel.scan(dt, samples);
    tr.times.resize(samples);
    tr.average.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        tr.times[i] = static_cast<double>(i) * dtau;
        tr.transfer[i] = std::clamp(tr.transfer[i], 0.0, 1.0);
        tr.average[i] = average_fidelity(tr.transfer[i]);
    }
    const auto& f = tr.transfer;
    for (std::size_t i = 1; i + 1 < samples; ++i) {
        if (f[i] > f[i - 1] && f[i] >= f[i + 1] && f[i] > peak_floor) {
            Peak pk = refine_peak(kernel, static_cast<double>(i - 1) * dt, static_cast<double>(i + 1) * dt,
                                  kPeakRefineTol / j_max);
            pk.time *= j_max;
            tr.peaks.push_back(pk);
        }
    }
    return tr;
}

Peak max_fidelity(const TransferKernel& kernel, double j_max, double window, std::size_t samples) {
    if (samples < 2) throw ContractError("a scan needs at least 2 samples");
    const double dt = window / static_cast<double>(samples - 1) / j_max;
    const auto f = kernel.scan(dt, samples);
    const auto best = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
    if (best == 0 || best + 1 == samples) {
        return {static_cast<double>(best) * dt * j_max, f[best]};
    }
    Peak pk = refine_peak(kernel, static_cast<double>(best - 1) * dt, static_cast<double>(best + 1) * dt,
                          kPeakRefineTol / j_max);
    if (pk.fidelity < f[best]) pk = {static_cast<double>(best) * dt, f[best]};
    pk.time *= j_max;
    return pk;
}

Peak max_fidelity(const EigenSystem<double>& es, double j_max, double window, std::size_t samples) {
    return max_fidelity(TransferKernel(es), j_max, window, samples);
}

std::vector<Peak> revival_peaks(const FidelityTrace& tr) {
    std::vector<Peak> out;
    if (tr.peaks.empty() || tr.times.empty()) return out;
    double tallest = 0.0;
    for (const auto& p : tr.peaks) tallest = std::max(tallest, p.fidelity);
    double first = 0.0;
    for (const auto& p : tr.peaks) {
        if (p.fidelity >= 0.9 * tallest) {
            first = p.time;
            break;
        }
    }
    const double window = tr.times.back();
    const double width = 2.0 * first;
    for (int k = 0; width * (k + 1) <= window; ++k) {
        const double lo = width * k, hi = width * (k + 1);
        const Peak* best = nullptr;
        for (const auto& p : tr.peaks) {
            if (p.time >= lo && p.time < hi && (!best || p.fidelity > best->fidelity)) best = &p;
        }
        if (best) out.push_back(*best);
    }
    return out;
}

}  // namespace qst
