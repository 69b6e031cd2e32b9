#include "twave/verification.hpp"

#include "twave/analysis.hpp"
#include "twave/kernels.hpp"
#include "twave/operators.hpp"
#include "twave/oracles.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace twave {

namespace {

constexpr std::array kBetas{0.1, 0.3, 0.7, 1.0};
constexpr std::array kLambdas{0.0, 0.1, 1.0};
constexpr std::array kTaus{1.0 / 20.0, 1.0 / 160.0};

CheckResult check_oracle_equivalence() {
    double worst = 0.0;
    for (double beta : kBetas) {
        for (double lambda : kLambdas) {
            for (double tau : kTaus) {
                const auto fast = tempered_coeffs(beta, lambda, tau, 512);
                const auto slow = oracle::tempered_coeffs_oracle(beta, lambda, tau, 512);
                for (std::size_t k = 0; k < 512; ++k) {
                    worst = std::max(worst, std::abs(fast[k] - slow[k]) / std::abs(slow[k]));
                }
            }
        }
    }
    return {"coefficient oracle equivalence", worst <= 1e-13,
            fmt::format("max relative difference {:.3e} (limit 1e-13)", worst)};
}

CheckResult check_positivity(std::size_t count) {
    double lowest = INFINITY;
    for (double beta : kBetas) {
        for (double lambda : kLambdas) {
            for (double tau : kTaus) {
                const auto c = tempered_coeffs(beta, lambda, tau, count);
                lowest = std::min(lowest, *std::min_element(c.l.begin(), c.l.end()));
            }
        }
    }
    return {"quadrature weights nonnegative", lowest >= 0.0,
            fmt::format("min l_k over k < {} is {:.3e}", count, lowest)};
}

CheckResult check_symbol() {
    double lowest = INFINITY;
    for (double beta : kBetas) {
        for (double lambda : kLambdas) {
            for (double tau : kTaus) {
                for (int s = 1; s <= 200; ++s) {
                    const double x = std::numbers::pi * s / 200.0;
                    lowest = std::min(lowest, generating_fn_value(beta, lambda * tau, x));
                }
            }
        }
    }
    return {"generating function nonnegative", lowest >= -1e-12,
            fmt::format("min f(beta, x) on (0, pi] is {:.3e}", lowest)};
}

CheckResult check_psd() {
    double worst = INFINITY;
    bool ok = true;
    for (std::size_t N : {16u, 64u, 256u}) {
        for (double beta : {0.1, 0.5, 1.0}) {
            for (double lambda_tau : {0.0, 0.0025, 0.1}) {
                // Only the product lambda*tau enters l_k.
                const auto c = tempered_coeffs(beta, lambda_tau, 1.0, N + 1);
                const auto rep = psd_check(build_L_matrix(c, N));
                const double scaled = rep.min_eigenvalue / c[0];
                worst = std::min(worst, scaled);
                ok = ok && rep.is_psd && scaled >= -1e-10;
            }
        }
    }
    return {"convolution matrix positive semidefinite", ok,
            fmt::format("min eigenvalue / l_0 = {:.3e}", worst)};
}

CheckResult check_riesz_definiteness(std::uint64_t seed) {
    double top = -INFINITY;
    bool ok = true;
    for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9, 2.0}) {
        for (std::size_t M : {8u, 32u, 128u}) {
            const auto rep =
                definiteness_check(assemble_riesz(alpha, M, 1.0 / static_cast<double>(M)), 50, seed);
            ok = ok && rep.negative_definite;
            top = std::max(top, rep.max_eigenvalue);
        }
    }
    return {"Riesz operator negative definite", ok,
            fmt::format("largest eigenvalue {:.6g}", top)};
}

CheckResult check_stability(std::size_t M, std::uint64_t seed) {
    double worst = 0.0;
    const double h = 1.0 / static_cast<double>(M);
    for (double alpha : {1.1, 1.5, 2.0}) {
        for (double gamma : {1.1, 1.5, 2.0}) {
            for (double ratio : {0.1, 1.0, 10.0}) {
                for (std::uint64_t s = 0; s < 3; ++s) {
                    const auto norms =
                        stability_experiment(alpha, gamma, 0.1, M, M, ratio * h, seed + s);
                    const double peak = *std::max_element(norms.begin() + 1, norms.end());
                    worst = std::max(worst, peak / norms.front());
                }
            }
        }
    }
    return {"perturbations do not grow", worst <= 1.0 + 1e-12,
            fmt::format("max_n |eps^n| / |eps^0| = {:.15f}", worst)};
}

CheckResult check_quadrature_order() {
    const ScalarFn v = [](double t) { return t * t * t * std::exp(-t); };
    const std::array<std::size_t, 4> steps{32, 64, 128, 256};
    double lo = INFINITY;
    double hi = 0.0;
    for (double beta : {0.3, 0.7, 1.0}) {
        for (double lambda : {0.0, 0.1, 1.0}) {
            const auto rep = quadrature_order_study(v, beta, lambda, 1.0, steps);
            for (double r : rep.ratios) {
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        }
    }
    return {"tempered quadrature second order", lo >= 3.6 && hi <= 4.4,
            fmt::format("error ratios per halving in [{:.4f}, {:.4f}]", lo, hi)};
}

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::vector<CheckResult> out;
    out.push_back(check_oracle_equivalence());
    out.push_back(check_positivity(options.positivity_count));
    out.push_back(check_symbol());
    out.push_back(check_psd());
    out.push_back(check_riesz_definiteness(options.seed));
    out.push_back(check_stability(options.stability_M, options.seed));
    out.push_back(check_quadrature_order());
    return out;
}

} // namespace twave
