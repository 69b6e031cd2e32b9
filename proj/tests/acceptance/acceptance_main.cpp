// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "twave/analysis.hpp"
#include "twave/kernels.hpp"
#include "twave/oracles.hpp"
#include "twave/problems.hpp"
#include "twave/solver.hpp"

#include "classical_scheme.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace {

using namespace twave;

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    const char* id;
    const char* name;
    double time_limit_s;
    std::function<Outcome()> body;
};

constexpr std::array<std::size_t, 4> kInverseSteps{20, 40, 80, 160};

struct TableColumn {
    double gamma;
    double alpha;
    std::array<double, 4> errors;
    std::array<double, 3> rates;
};

// Maximum errors at T = 1/2 with h = tau, lambda = 0.1.
constexpr std::array<TableColumn, 3> kTable{{
    {2.0, 1.5, {5.2886e-05, 1.4084e-05, 3.6352e-06, 9.2322e-07}, {1.91, 1.95, 1.98}},
    {1.3, 1.7, {3.8119e-05, 9.7938e-06, 2.4815e-06, 6.2446e-07}, {1.96, 1.98, 1.99}},
    {1.7, 1.3, {4.7519e-05, 1.2539e-05, 3.2206e-06, 8.1607e-07}, {1.92, 1.96, 1.98}},
}};

ConvergenceReport study(double alpha, double gamma, double lambda) {
    const auto p = manufactured_problem(alpha, gamma, lambda);
    const auto grids = equal_step_resolutions(p, kInverseSteps);
    return convergence_study(p, grids);
}

Outcome table_reproduction() {
    double worst_rel = 0.0;
    double worst_rate = 0.0;
    for (const auto& col : kTable) {
        const auto rep = study(col.alpha, col.gamma, 0.1);
        for (std::size_t r = 0; r < 4; ++r) {
            worst_rel = std::max(worst_rel, std::abs(rep.rows[r].max_error / col.errors[r] - 1.0));
            if (r > 0) {
                worst_rate = std::max(worst_rate, std::abs(*rep.rows[r].rate - col.rates[r - 1]));
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "12 errors: max rel dev %.3e (tol 2e-2); 9 rates: max abs dev %.4f (tol 0.03)",
                  worst_rel, worst_rate);
    return {worst_rel <= 0.02 && worst_rate <= 0.03, buf};
}

Outcome second_order_bracket() {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& col : kTable) {
        for (double lambda : {0.1, 0.0}) {
            const double slope = study(col.alpha, col.gamma, lambda).fitted_order();
            lo = std::min(lo, slope);
            hi = std::max(hi, slope);
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "fitted slopes in [%.4f, %.4f] (bracket [1.85, 2.05])", lo, hi);
    return {lo >= 1.85 && hi <= 2.05, buf};
}

constexpr std::array kBetas{0.1, 0.3, 0.7, 1.0};
constexpr std::array kLambdas{0.0, 0.1, 1.0};
constexpr std::array kTaus{1.0 / 20.0, 1.0 / 160.0};

Outcome oracle_equivalence() {
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
    char buf[96];
    std::snprintf(buf, sizeof buf, "max relative difference %.3e (tol 1e-13)", worst);
    return {worst <= 1e-13, buf};
}

Outcome weight_positivity() {
    double lowest = INFINITY;
    for (double beta : kBetas) {
        for (double lambda : kLambdas) {
            for (double tau : kTaus) {
                const auto c = tempered_coeffs(beta, lambda, tau, 10001);
                lowest = std::min(lowest, *std::min_element(c.l.begin(), c.l.end()));
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "min l_k for k <= 10^4 is %.3e", lowest);
    return {lowest >= 0.0, buf};
}

Outcome convolution_psd() {
    double worst_eig = INFINITY;
    for (std::size_t N : {16u, 64u, 256u}) {
        for (double beta : {0.1, 0.5, 1.0}) {
            for (double lt : {0.0, 0.0025, 0.1}) {
                const auto c = tempered_coeffs(beta, lt, 1.0, N + 1);
                const auto rep = psd_check(build_L_matrix(c, N));
                worst_eig = std::min(worst_eig, rep.min_eigenvalue / c[0]);
            }
        }
    }
    double worst_symbol = INFINITY;
    for (double beta : kBetas) {
        for (double lambda : kLambdas) {
            for (double tau : kTaus) {
                for (int s = 1; s <= 200; ++s) {
                    const double x = std::numbers::pi * s / 200.0;
                    worst_symbol = std::min(worst_symbol, generating_fn_value(beta, lambda * tau, x));
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "min eig/l_0 = %.3e (tol -1e-10); min symbol = %.3e (tol -1e-12)",
                  worst_eig, worst_symbol);
    return {worst_eig >= -1e-10 && worst_symbol >= -1e-12, buf};
}

Outcome unconditional_stability() {
    const std::size_t M = 40;
    const std::size_t N = 40;
    const double h = 1.0 / static_cast<double>(M);
    double worst = 0.0;
    for (double alpha : {1.1, 1.5, 2.0}) {
        for (double gamma : {1.1, 1.5, 2.0}) {
            for (double ratio : {0.1, 1.0, 10.0}) {
                for (std::uint64_t seed : {1u, 2u, 3u}) {
                    const auto norms = stability_experiment(alpha, gamma, 0.1, M, N, ratio * h, seed);
                    for (double v : norms) {
                        worst = std::max(worst, v / norms.front());
                    }
                }
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max_n |eps^n|/|eps^0| = %.15f (tol 1 + 1e-12)", worst);
    return {worst <= 1.0 + 1e-12, buf};
}

Outcome quadrature_order() {
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
    char buf[96];
    std::snprintf(buf, sizeof buf, "error ratios per halving in [%.4f, %.4f] (bracket [3.6, 4.4])",
                  lo, hi);
    return {lo >= 3.6 && hi <= 4.4, buf};
}

Outcome alpha_two_degeneration() {
    double worst = 0.0;
    for (double gamma : {1.3, 1.7, 2.0}) {
        const auto p = manufactured_problem(2.0, gamma, 0.1);
        const auto res = solve(p, Discretization::for_problem(p, 40, 40));
        const auto ref = testing::classical_alpha2_solve(gamma, 0.1, 40, 40, p.horizon, p.forcing);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            worst = std::max(worst, std::abs(res.u[i] - ref[i]));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |toeplitz - tridiagonal| = %.3e (tol 1e-12)", worst);
    return {worst <= 1e-12, buf};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"C1", "manufactured-solution error table", 60.0, table_reproduction},
        {"C2", "second-order bracket", 60.0, second_order_bracket},
        {"C3", "coefficient oracle equivalence", 5.0, oracle_equivalence},
        {"C4", "quadrature weight positivity", 5.0, weight_positivity},
        {"C5", "convolution matrix PSD", 30.0, convolution_psd},
        {"C6", "unconditional stability", 60.0, unconditional_stability},
        {"C7", "tempered quadrature order", 60.0, quadrature_order},
        {"C8", "alpha = 2 degeneration", 60.0, alpha_two_degeneration},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.time_limit_s;
        const bool ok = o.passed && in_time;
        failures += ok ? 0 : 1;
        std::printf("[%s] %s %s: %s (%.2fs, limit %.0fs)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.time_limit_s);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
