#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

#include "qst/tridiagonal_eigen.hpp"

namespace qst {

/// Site amplitudes c_j(t) of exp(-iHt)|initial_site> (hbar = 1, raw time).
Eigen::VectorXcd propagate(const EigenSystem<double>& es, Eigen::Index initial_site, double t);

/// Endpoint-to-endpoint transition amplitude a_{1,N}(t).
std::complex<double> transition_amplitude(const EigenSystem<double>& es, double t);

/// F(t) = |a_{1,N}(t)|^2.
double transfer_fidelity(const EigenSystem<double>& es, double t);

/// Bloch-sphere averaged fidelity with the optimal global field (cos nu = 1):
/// |a|/3 + |a|^2/6 + 1/2 with |a|^2 = F.
double average_fidelity(double transfer);

/// Evaluates a_{1,N}(t) for one eigensystem. Grid scans advance each
/// eigen-phase by a fixed rotation and resynchronise periodically.
class TransferKernel {
public:
    explicit TransferKernel(const EigenSystem<double>& es);

    std::complex<double> amplitude(double t) const;
    double fidelity(double t) const { return std::norm(amplitude(t)); }

    /// F at t = i*dt for i in [0, count).
    std::vector<double> scan(double dt, std::size_t count) const;

private:
    std::vector<double> energies_;
    std::vector<double> weights_;  // phi_k(1) * phi_k(N)
};

struct Peak {
    double time = 0.0;  // dimensionless t * J_max
    double fidelity = 0.0;
};

struct FidelityTrace {
    double j_max = 1.0;
    std::vector<double> times;  // t * J_max
    std::vector<double> transfer;
    std::vector<double> average;
    std::vector<Peak> peaks;  // refined local maxima above the floor
};

inline constexpr double kPeakFloor = 0.5;
inline constexpr double kPeakRefineTol = 1e-6;
inline constexpr double kSamplesPerUnit = 200.0;  // 10,000 per window of 50

/// Uniformly sampled F(t) and <F_av(t)> on [0, window] in units of t*J_max,
/// plus local maxima above `peak_floor`, each refined by golden-section search.
FidelityTrace trace(const EigenSystem<double>& es, double j_max, double window, std::size_t samples,
                    double peak_floor = kPeakFloor);

/// Global maximum of F on [0, window] (dimensionless), refined around the
/// best grid sample.
Peak max_fidelity(const TransferKernel& kernel, double j_max, double window, std::size_t samples);
Peak max_fidelity(const EigenSystem<double>& es, double j_max, double window, std::size_t samples);

/// Golden-section maximisation of F(t) on the raw-time bracket [lo, hi].
Peak refine_peak(const TransferKernel& kernel, double lo, double hi, double tol);

/// Quasi-mirror revivals: the first revival time t_r is the earliest peak
/// within 10% of the tallest one; the window is cut into whole bins
/// [2k t_r, 2(k+1) t_r] and the tallest peak of each bin is kept.
std::vector<Peak> revival_peaks(const FidelityTrace& tr);

}  // namespace qst
