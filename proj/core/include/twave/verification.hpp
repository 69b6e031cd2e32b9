#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twave {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// Largest k checked for l_k >= 0.
    std::size_t positivity_count = 10001;
    /// Interior resolution for the stability sweep.
    std::size_t stability_M = 32;
};

/// Self-contained property checks of the discretization: coefficient oracle
/// agreement, l_k >= 0, symbol positivity, PSD of the convolution matrix,
/// negative definiteness of the Riesz matrix, perturbation stability and
/// quadrature order.
[[nodiscard]] std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

} // namespace twave
