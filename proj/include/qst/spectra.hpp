#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace qst {

/// Strictly ascending eigenvalue list with optional pinch metadata.
class Spectrum {
public:
    /// Sorts the input; throws ContractError on repeated or non-finite values.
    explicit Spectrum(Eigen::VectorXd values);
    explicit Spectrum(const std::vector<double>& values);

    const Eigen::VectorXd& values() const { return values_; }
    Eigen::Index size() const { return values_.size(); }
    double operator[](Eigen::Index k) const { return values_(k); }

    /// Consecutive differences, size() - 1 entries.
    Eigen::VectorXd gaps() const;
    double range() const { return values_(size() - 1) - values_(0); }

    std::optional<int> p;          // pinch denominator
    std::optional<double> alpha;   // half of the base spacing
    std::optional<double> t_m;     // mirror time (raw units)

private:
    Eigen::VectorXd values_;
};

struct PinchSpec {
    int n = 0;
    int p = 1;  // odd, >= 1
    double alpha = 0.5;
};

/// Equidistant levels 2*alpha apart, top gap compressed to 2*alpha/p,
/// centred so that the lowest level is alpha*(1-N); `shift` is added to all.
Spectrum pinched_spectrum(const PinchSpec& ps, double shift = 0.0);

struct PstCheck {
    bool valid = false;
    double delta = 0.0;  // common unit pi/t_m of the gaps
    double t_m = 0.0;
    std::vector<long> odd_integers;  // Q_{k,k+1}
    double residual = 0.0;           // max |gap - Q*delta| / mean gap
};

inline constexpr double kPstTolerance = 1e-9;
inline constexpr double kPstDiagnosticTolerance = 1e-3;
inline constexpr int kMaxOddDivisor = 31;

/// Searches delta = g/(2m-1), m = 1..31, g the smallest gap, for the largest
/// unit making every gap an odd multiple within `tol`. When none qualifies the
/// best-scoring candidate is reported with valid = false.
PstCheck check_pst_condition(const Spectrum& s, double tol = kPstTolerance);

/// Least-squares fit of s onto {l0 + g*k (k < N-1), l0 + g*(N-2+1/p)}.
Spectrum snap_to_pst(const Spectrum& s, int p);

/// lambda_k + lambda_{N-1-k} constant to within tol * max(1, range).
bool spectral_symmetry_check(const Spectrum& s, double tol = 1e-9);

}  // namespace qst
