#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qst/errors.hpp"
#include "qst/dynamics.hpp"
#include "qst/reconstruction.hpp"
#include "qst/spectra.hpp"

namespace qst {
namespace {

using std::numbers::pi;

ChainSpec qpst5() { return ChainSpec({3.40, 2.60, 2.33, 2.60, 3.40}, {-0.91, -0.91, -0.91, -0.91}); }

TEST(Propagate, IdentityAtTimeZero) {
    const auto es = eigendecompose(qpst5());
    for (Eigen::Index site = 0; site < 5; ++site) {
        const Eigen::VectorXcd c = propagate(es, site, 0.0);
        for (Eigen::Index j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(c(j)), j == site ? 1.0 : 0.0, 1e-14);
    }
}

TEST(Propagate, TwoSiteClosedForm) {
    const auto es = eigendecompose(ChainSpec({0.0, 0.0}, {-1.0}));
    for (double t : {0.1, 0.7, 1.3, 2.9, 10.0}) {
        EXPECT_NEAR(std::norm(propagate(es, 0, t)(1)), std::sin(t) * std::sin(t), 1e-14);
        EXPECT_NEAR(transfer_fidelity(es, t), std::sin(t) * std::sin(t), 1e-14);
    }
}

TEST(Propagate, RejectsBadSite) {
    const auto es = eigendecompose(qpst5());
    EXPECT_THROW(propagate(es, 5, 1.0), StructuralError);
}

TEST(Propagate, MatchesMatrixExponentialOracle) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> time(0.0, 20.0);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + rep % 5;
        const Eigen::MatrixXd h = oracle::random_jacobi(n, rng);
        const auto es = eigendecompose(h);
        for (int s = 0; s < 5; ++s) {
            const double t = time(rng);
            const Eigen::Index site = s % n;
            const Eigen::VectorXcd got = propagate(es, site, t);
            const Eigen::VectorXcd want = oracle::propagate(h, site, t);
            EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-8);
            EXPECT_NEAR(got.squaredNorm(), 1.0, 1e-10);
        }
    }
}

TEST(TransferFidelity, ZeroAtTimeZero) {
    for (int n : {2, 3, 7}) {
        const auto es = eigendecompose(ChainSpec(std::vector<double>(n, 0.0), std::vector<double>(n - 1, 1.0)));
        EXPECT_NEAR(transfer_fidelity(es, 0.0), 0.0, 1e-28);
    }
}

TEST(TransferFidelity, KernelScanAgreesWithDirectEvaluation) {
    const auto es = eigendecompose(qpst5());
    const TransferKernel kernel(es);
    const double dt = 0.0137;
    const auto f = kernel.scan(dt, 5000);
    for (std::size_t i = 0; i < f.size(); i += 97) EXPECT_NEAR(f[i], transfer_fidelity(es, i * dt), 1e-12);
}

TEST(AverageFidelity, Endpoints) {
    EXPECT_DOUBLE_EQ(average_fidelity(1.0), 1.0);
    EXPECT_DOUBLE_EQ(average_fidelity(0.0), 0.5);
    EXPECT_NEAR(average_fidelity(0.9998), 0.9999, 5e-5);
    EXPECT_THROW(average_fidelity(1.2), ContractError);
    EXPECT_THROW(average_fidelity(-0.1), ContractError);
}

TEST(PerfectTransfer, ReachedAtMirrorTimeAndPeriodic) {
    for (int n : {3, 4, 5, 8, 12}) {
        for (int p : {1, 3, 5}) {
            const Spectrum s = pinched_spectrum({n, p, 0.5});
            const auto es = eigendecompose(reconstruct(s));
            ASSERT_TRUE(check_pst_condition(Spectrum(es.values)).valid);
            const double tm = *s.t_m;
            EXPECT_GE(transfer_fidelity(es, tm), 1.0 - 1e-8) << "N=" << n << " p=" << p;
            for (int k = 1; k <= 3; ++k) EXPECT_GE(transfer_fidelity(es, tm + 2 * tm * k), 1.0 - 1e-6);
        }
    }
}

TEST(PerfectTransfer, FiveSiteReconstructionAtThreePi) {
    const auto es = eigendecompose(reconstruct(pinched_spectrum({5, 3, 0.5}, 3.0)));
    EXPECT_GE(std::norm(propagate(es, 0, 3 * pi)(4)), 0.9999);
}

TEST(Trace, InvariantsHoldAtEverySample) {
    const auto es = eigendecompose(qpst5());
    const auto tr = trace(es, 0.91, 50.0, 10001);
    ASSERT_EQ(tr.times.size(), 10001u);
    EXPECT_DOUBLE_EQ(tr.times.back(), 50.0);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        EXPECT_GE(tr.transfer[i], 0.0);
        EXPECT_LE(tr.transfer[i], 1.0);
        EXPECT_GE(tr.average[i], 0.5);
        EXPECT_LE(tr.average[i], 1.0);
        const double a = std::sqrt(tr.transfer[i]);
        EXPECT_NEAR(tr.average[i], a / 3 + a * a / 6 + 0.5, 1e-15);
    }
    for (const auto& pk : tr.peaks) EXPECT_GT(pk.fidelity, kPeakFloor);
}

TEST(Trace, QuasiPerfectFiveSiteRow) {
    const auto es = eigendecompose(qpst5());
    const auto best = max_fidelity(es, 0.91, 50.0, 10001);
    EXPECT_NEAR(best.fidelity, 0.9998, 5e-4);
    EXPECT_NEAR(best.time, 8.63, 0.05);
}

TEST(Trace, TwoSitePeakAtQuarterPeriod) {
    const auto es = eigendecompose(ChainSpec({0.0, 0.0}, {-1.0}));
    const auto tr = trace(es, 1.0, 3.0, 3001);
    ASSERT_EQ(tr.peaks.size(), 1u);
    EXPECT_NEAR(tr.peaks[0].time, pi / 2, 1e-5);
    EXPECT_NEAR(tr.peaks[0].fidelity, 1.0, 1e-12);
}

TEST(Trace, RejectsDegenerateSampling) {
    const auto es = eigendecompose(qpst5());
    EXPECT_THROW(trace(es, 0.91, 50.0, 1), ContractError);
}

TEST(RevivalPeaks, PerfectChainStaysNearUnity) {
    const ChainSpec chain = reconstruct(pinched_spectrum({5, 3, 0.5}, 3.0));
    const auto tr = trace(eigendecompose(chain), chain.max_coupling(), 400.0, 80001);
    const auto revivals = revival_peaks(tr);
    ASSERT_GE(revivals.size(), 20u);
    for (const auto& p : revivals) EXPECT_GE(p.fidelity, 0.999);
}

}  // namespace
}  // namespace qst
