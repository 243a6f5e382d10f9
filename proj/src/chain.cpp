#include "qst/chain.hpp"

#include <algorithm>
#include <string>

namespace qst {

std::string_view to_string(SignConvention s) {
    return s == SignConvention::negative_offdiag ? "negative" : "positive";
}

SignConvention sign_convention_from_string(std::string_view s) {
    if (s == "negative" || s == "negative_offdiag") return SignConvention::negative_offdiag;
    if (s == "positive" || s == "positive_offdiag") return SignConvention::positive_offdiag;
    throw StructuralError("unknown sign convention '" + std::string(s) + "'");
}

ChainSpec::ChainSpec(std::vector<double> onsite, std::vector<double> couplings, SignConvention sign)
    : onsite_(std::move(onsite)), couplings_(std::move(couplings)), sign_(sign) {
    if (onsite_.size() < 2) {
        throw StructuralError("a chain needs at least 2 sites, got " + std::to_string(onsite_.size()));
    }
    if (couplings_.size() + 1 != onsite_.size()) {
        throw StructuralError("chain with " + std::to_string(onsite_.size()) + " sites needs " +
                              std::to_string(onsite_.size() - 1) + " couplings, got " +
                              std::to_string(couplings_.size()));
    }
    for (std::size_t i = 0; i < couplings_.size(); ++i) {
        if (couplings_[i] == 0.0 || !std::isfinite(couplings_[i])) {
            throw StructuralError("coupling " + std::to_string(i + 1) + " is zero or non-finite");
        }
    }
    for (double e : onsite_) {
        if (!std::isfinite(e)) throw StructuralError("non-finite on-site energy");
    }
}

double ChainSpec::max_coupling() const {
    double m = 0.0;
    for (double j : couplings_) m = std::max(m, std::abs(j));
    return m;
}

MirrorCheck check_mirror_symmetry(const ChainSpec& spec, double tol) {
    const std::size_t n = spec.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        worst = std::max(worst, std::abs(spec.onsite()[i] - spec.onsite()[n - 1 - i]));
    }
    const std::size_t m = n - 1;
    for (std::size_t i = 0; i < m / 2; ++i) {
        worst = std::max(worst, std::abs(spec.offdiag(i) - spec.offdiag(m - 1 - i)));
    }
    return {worst <= tol, worst};
}

}  // namespace qst
