#include "twave/oracles.hpp"

#include "twave/errors.hpp"

#include <cmath>
#include <numbers>

namespace twave::oracle {

std::vector<double> power_series_pow(std::span<const double> poly, double power,
                                     std::size_t count) {
    if (poly.empty() || poly[0] == 0.0) {
        throw ContractViolation("power_series_pow needs P(0) != 0");
    }
    std::vector<double> f(count, 0.0);
    if (count == 0) {
        return f;
    }
    f[0] = std::pow(poly[0], power);
    for (std::size_t n = 1; n < count; ++n) {
        double acc = 0.0;
        const std::size_t top = std::min(n, poly.size() - 1);
        for (std::size_t k = 1; k <= top; ++k) {
            const double kd = static_cast<double>(k);
            acc += ((power + 1.0) * kd - static_cast<double>(n)) * poly[k] * f[n - k];
        }
        f[n] = acc / (static_cast<double>(n) * poly[0]);
    }
    return f;
}

TemperedCoeffs tempered_coeffs_oracle(double beta, double lambda, double tau, std::size_t count) {
    if (count > 4096) {
        throw ContractViolation("tempered_coeffs_oracle is O(count^2); count must be <= 4096");
    }
    const double q = std::exp(-lambda * tau);
    const double first[] = {1.0, -q};
    const double second[] = {1.5, -0.5 * q};
    const auto a = power_series_pow(first, -beta, count);
    const auto c = power_series_pow(second, -beta, count);

    TemperedCoeffs out;
    out.beta = beta;
    out.lambda = lambda;
    out.tau = tau;
    out.l.assign(count, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
        double acc = 0.0;
        for (std::size_t m = 0; m <= k; ++m) {
            acc += a[m] * c[k - m];
        }
        out.l[k] = acc;
    }
    return out;
}

namespace {

// Left and right Grünwald-Letnikov sums at spacing h; O(h) accurate.
double gl_riesz(const std::function<double(double)>& u, double a, double b, double x,
                double alpha, double h) {
    const auto left_terms = static_cast<std::size_t>(std::floor((x - a) / h + 1e-9));
    const auto right_terms = static_cast<std::size_t>(std::floor((b - x) / h + 1e-9));
    const std::size_t n = std::max(left_terms, right_terms) + 1;

    // Coefficients of (1 - z)^alpha.
    std::vector<double> c(n);
    c[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        c[k] = c[k - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(k));
    }
    double left = 0.0;
    for (std::size_t k = left_terms + 1; k-- > 0;) {
        const double y = x - static_cast<double>(k) * h;
        left += y < a ? 0.0 : c[k] * u(y);
    }
    double right = 0.0;
    for (std::size_t k = right_terms + 1; k-- > 0;) {
        const double y = x + static_cast<double>(k) * h;
        right += y > b ? 0.0 : c[k] * u(y);
    }
    const double kappa = 1.0 / (2.0 * std::cos(alpha * std::numbers::pi / 2.0));
    return -kappa * (left + right) / std::pow(h, alpha);
}

} // namespace

double grunwald_riesz_derivative(const std::function<double(double)>& u, double a, double b,
                                 double x, double alpha, double h) {
    const double coarse = gl_riesz(u, a, b, x, alpha, h);
    const double fine = gl_riesz(u, a, b, x, alpha, 0.5 * h);
    return 2.0 * fine - coarse;
}

} // namespace twave::oracle
