#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qst/chain.hpp"

namespace qst {

struct CouplingStatistics {
    double std_dev = 0.0;         // population std of |J|
    double max_rel_spread = 0.0;  // (J_max - J_min) / J_max
    double mean = 0.0;
};

CouplingStatistics coupling_statistics(const ChainSpec& spec);

/// J_{i,i+1} = J0 sqrt(i (N - i)), zero on-site energies.
ChainSpec christandl_chain(int n, double j0, SignConvention sign = SignConvention::negative_offdiag);

struct SweepPoint {
    int n = 0;
    int p = 0;
    double std_j = 0.0;
    double max_rel_spread_j = 0.0;
    double std_eps = 0.0;
    double roundtrip_err = 0.0;
    std::optional<std::string> error;  // set when reconstruction failed
};

/// Reconstructs the pinched spectrum (scale alpha) for every (N, p) pair;
/// output ordered by N, then p. Failing points carry `error` and NaN stats.
std::vector<SweepPoint> deviation_sweep(const std::vector<int>& n_values, const std::vector<int>& p_values,
                                        double alpha = 0.5);

/// "N,p,std_J,max_rel_spread_J,std_eps,roundtrip_err" with fixed formatting.
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

}  // namespace qst
