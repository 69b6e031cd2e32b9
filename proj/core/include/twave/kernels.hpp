#pragma once

#include <cstddef>
#include <vector>

namespace twave {

/// Weights of the second-order Riesz stencil for order alpha in (1, 2].
///
/// The discrete operator at an interior node is
///   -kappa / (gamma_4_minus_alpha * h^alpha) * sum_j w_{i,j} u_j,
/// where w_{i,j} is built from `weights` by `assemble_riesz`. The h-dependent
/// scale is applied there, so this struct is mesh independent.
struct RieszStencil {
    double alpha = 2.0;
    double kappa = -0.5;              ///< 1 / (2 cos(alpha pi / 2)), negative on (1, 2]
    double gamma_4_minus_alpha = 1.0; ///< Gamma(4 - alpha)
    std::vector<double> weights;      ///< w_0 ... w_{count-1}
};

/// Taylor coefficients of (1 - z)^(-beta).
struct GrunwaldSeq {
    double beta = 1.0;
    std::vector<double> g;
};

/// Second-order tempered convolution quadrature weights l_k for
/// I_t^{beta,lambda} on a uniform grid of step tau.
struct TemperedCoeffs {
    double beta = 1.0;
    double lambda = 0.0;
    double tau = 1.0;
    std::vector<double> l;

    [[nodiscard]] std::size_t size() const noexcept { return l.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return l[k]; }
};

/// Riesz weights w_0 ... w_{count-1}.
/// Throws DomainError unless 1 < alpha <= 2, ContractViolation if count < 4.
[[nodiscard]] RieszStencil riesz_weights(double alpha, std::size_t count);

/// g_0 ... g_{count-1} by the multiplicative recursion g_m = g_{m-1} (m-1+beta)/m.
[[nodiscard]] GrunwaldSeq grunwald_coeffs(double beta, std::size_t count);

/// l_0 ... l_{count-1} from the closed-form convolution of Grünwald factors:
///   l_k = e^{-lambda k tau} (3/2)^{-beta} sum_{m=0}^{k} 3^{-m} g_m g_{k-m}.
/// The inner sum runs from m = k down to 0 (small terms first).
/// Throws DomainError unless 0 < beta <= 1, lambda >= 0, tau > 0.
[[nodiscard]] TemperedCoeffs tempered_coeffs(double beta, double lambda, double tau,
                                             std::size_t count);

/// Symbol f(beta, x) = Re l^beta(e^{ix}) of the convolution quadrature, for
/// x in [0, pi]. Returns +infinity at the pole lambda_tau = 0, x = 0.
[[nodiscard]] double generating_fn_value(double beta, double lambda_tau, double x);

[[nodiscard]] bool is_generating_fn_pole(double lambda_tau, double x) noexcept;

} // namespace twave
