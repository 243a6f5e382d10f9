#include "qst/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "qst/errors.hpp"
#include "qst/reconstruction.hpp"
#include "qst/spectra.hpp"
#include "qst/tridiagonal_eigen.hpp"

namespace qst {

namespace {

double population_std(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

CouplingStatistics coupling_statistics(const ChainSpec& spec) {
    std::vector<double> mags;
    for (double j : spec.couplings()) mags.push_back(std::abs(j));
    const auto [lo, hi] = std::minmax_element(mags.begin(), mags.end());
    CouplingStatistics st;
    st.std_dev = population_std(mags);
    st.max_rel_spread = (*hi - *lo) / *hi;
    for (double m : mags) st.mean += m;
    st.mean /= static_cast<double>(mags.size());
    return st;
}

ChainSpec christandl_chain(int n, double j0, SignConvention sign) {
    if (n < 2) throw ContractError("Christandl chain needs N >= 2");
    if (!(j0 > 0.0)) throw ContractError("Christandl chain needs J0 > 0");
    std::vector<double> couplings;
    for (int i = 1; i < n; ++i) couplings.push_back(j0 * std::sqrt(static_cast<double>((n - i) * i)));
    return ChainSpec(std::vector<double>(static_cast<std::size_t>(n), 0.0), std::move(couplings), sign);
}

std::vector<SweepPoint> deviation_sweep(const std::vector<int>& n_values, const std::vector<int>& p_values,
                                        double alpha) {
    for (int p : p_values) {
        if (p < 1 || p % 2 == 0) throw ContractError("sweep pinch values must be odd and positive");
    }
    std::vector<int> ns = n_values, ps = p_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    std::vector<SweepPoint> out;
    for (int n : ns) {
        for (int p : ps) {
            SweepPoint pt;
            pt.n = n;
            pt.p = p;
            try {
                const Spectrum s = pinched_spectrum({n, p, alpha});
                const ChainSpec chain = reconstruct(s);
                const auto stats = coupling_statistics(chain);
                pt.std_j = stats.std_dev;
                pt.max_rel_spread_j = stats.max_rel_spread;
                pt.std_eps = population_std(chain.onsite());
                pt.roundtrip_err = (eigendecompose(chain).values - s.values()).cwiseAbs().maxCoeff();
            } catch (const Error& e) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                pt.std_j = pt.max_rel_spread_j = pt.std_eps = pt.roundtrip_err = nan;
                pt.error = e.what();
            }
            out.push_back(pt);
        }
    }
    return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
    os << "N,p,std_J,max_rel_spread_J,std_eps,roundtrip_err\n";
    os << std::setprecision(12);
    for (const auto& pt : points) {
        os << pt.n << ',' << pt.p << ',' << pt.std_j << ',' << pt.max_rel_spread_j << ',' << pt.std_eps << ','
           << pt.roundtrip_err << '\n';
    }
}

}  // namespace qst
