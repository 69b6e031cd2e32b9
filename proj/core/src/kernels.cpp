#include "twave/kernels.hpp"

#include "twave/errors.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace twave {

namespace {

void require_riesz_order(double alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw DomainError("Riesz order alpha must lie in (1, 2], got " + std::to_string(alpha));
    }
}

void require_tempered_args(double beta, double lambda, double tau) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw DomainError("beta = gamma - 1 must lie in (0, 1], got " + std::to_string(beta));
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("tempering rate lambda must be >= 0, got " + std::to_string(lambda));
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("time step tau must be > 0, got " + std::to_string(tau));
    }
}

} // namespace

RieszStencil riesz_weights(double alpha, std::size_t count) {
    require_riesz_order(alpha);
    if (count < 4) {
        throw ContractViolation("riesz_weights needs count >= 4");
    }

    RieszStencil s;
    s.alpha = alpha;
    s.kappa = 1.0 / (2.0 * std::cos(alpha * std::numbers::pi / 2.0));
    s.gamma_4_minus_alpha = std::tgamma(4.0 - alpha);
    // cos(pi) rounds to exactly -1, so kappa(2) = -1/2 exactly.

    const double p = 3.0 - alpha;
    s.weights.resize(count);
    s.weights[0] = 1.0;
    s.weights[1] = -4.0 + std::pow(2.0, p);
    s.weights[2] = 6.0 - std::pow(2.0, 5.0 - alpha) + std::pow(3.0, p);
    for (std::size_t m = 3; m < count; ++m) {
        const double md = static_cast<double>(m);
        s.weights[m] = std::pow(md + 1.0, p) - 4.0 * std::pow(md, p) + 6.0 * std::pow(md - 1.0, p) -
                       4.0 * std::pow(md - 2.0, p) + std::pow(md - 3.0, p);
    }
    return s;
}

GrunwaldSeq grunwald_coeffs(double beta, std::size_t count) {
    if (count < 1) {
        throw ContractViolation("grunwald_coeffs needs count >= 1");
    }
    if (!std::isfinite(beta)) {
        throw DomainError("grunwald_coeffs: beta must be finite");
    }
    GrunwaldSeq seq;
    seq.beta = beta;
    seq.g.resize(count);
    seq.g[0] = 1.0;
    for (std::size_t m = 1; m < count; ++m) {
        const double md = static_cast<double>(m);
        seq.g[m] = seq.g[m - 1] * (md - 1.0 + beta) / md;
    }
    return seq;
}

TemperedCoeffs tempered_coeffs(double beta, double lambda, double tau, std::size_t count) {
    require_tempered_args(beta, lambda, tau);
    if (count < 1) {
        throw ContractViolation("tempered_coeffs needs count >= 1");
    }

    const GrunwaldSeq gs = grunwald_coeffs(beta, count);
    const auto& g = gs.g;

    std::vector<double> third_pow(count);
    third_pow[0] = 1.0;
    for (std::size_t m = 1; m < count; ++m) {
        third_pow[m] = third_pow[m - 1] / 3.0;
    }
    // Weighted factors 3^{-m} g_m; these decay geometrically.
    std::vector<double> weighted(count);
    for (std::size_t m = 0; m < count; ++m) {
        weighted[m] = third_pow[m] * g[m];
    }

    const double scale = std::pow(1.5, -beta);
    TemperedCoeffs out;
    out.beta = beta;
    out.lambda = lambda;
    out.tau = tau;
    out.l.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        double sum = 0.0;
        for (std::size_t m = k + 1; m-- > 0;) {
            sum += weighted[m] * g[k - m];
        }
        // Untempered value first so that the tempered sequence is exactly
        // e^{-lambda k tau} times the lambda = 0 sequence.
        const double untempered = scale * sum;
        out.l[k] = lambda == 0.0 ? untempered
                                 : std::exp(-lambda * static_cast<double>(k) * tau) * untempered;
    }
    return out;
}

bool is_generating_fn_pole(double lambda_tau, double x) noexcept {
    return lambda_tau == 0.0 && x == 0.0;
}

double generating_fn_value(double beta, double lambda_tau, double x) {
    if (!(lambda_tau >= 0.0)) {
        throw DomainError("generating_fn_value: lambda*tau must be >= 0");
    }
    if (!(x >= 0.0 && x <= std::numbers::pi)) {
        throw DomainError("generating_fn_value: x must lie in [0, pi]");
    }
    if (is_generating_fn_pole(lambda_tau, x)) {
        return std::numeric_limits<double>::infinity();
    }

    using cd = std::complex<double>;
    const double decay = std::exp(-lambda_tau);
    // 1 - decay e^{+-ix}, with the real part formed without cancellation near x = 0.
    const double half_sin = std::sin(0.5 * x);
    const double re = -std::expm1(-lambda_tau) + 2.0 * decay * half_sin * half_sin;
    const double im = decay * std::sin(x);
    auto symbol = [&](cd q) { return std::pow(q, -beta) * std::pow(1.0 + 0.5 * q, -beta); };
    const cd value = 0.5 * symbol(cd(re, -im)) + 0.5 * symbol(cd(re, im));
    const double tol = 1e-12 * std::max(1.0, std::abs(value.real()));
    if (std::abs(value.imag()) > tol) {
        throw InvariantViolation("generating function has non-negligible imaginary part");
    }
    return value.real();
}

} // namespace twave
