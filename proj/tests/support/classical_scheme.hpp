#pragma once

// Independent implementation of the alpha = 2 case of the time scheme: the
// classical three-point Laplacian, a Thomas solve per step and a history of
// raw solution vectors. Used to cross-check the Toeplitz solver.

#include "twave/oracles.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace twave::testing {

inline std::vector<double> classical_laplacian(const std::vector<double>& u, double h) {
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? u[i - 1] : 0.0;
        const double right = i + 1 < n ? u[i + 1] : 0.0;
        out[i] = (left - 2.0 * u[i] + right) / (h * h);
    }
    return out;
}

/// Solves (1 + 2c) x_i - c (x_{i-1} + x_{i+1}) = r_i with zero Dirichlet ends.
inline std::vector<double> thomas(double c, std::vector<double> r) {
    const std::size_t n = r.size();
    std::vector<double> cp(n);
    const double diag = 1.0 + 2.0 * c;
    const double off = -c;
    cp[0] = off / diag;
    r[0] = r[0] / diag;
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag - off * cp[i - 1];
        cp[i] = off / m;
        r[i] = (r[i] - off * r[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        r[i] -= cp[i] * r[i + 1];
    }
    return r;
}

/// u^N on interior nodes of (0, 1) for alpha = 2.
inline std::vector<double> classical_alpha2_solve(double gamma, double lambda, std::size_t M,
                                                  std::size_t N, double T,
                                                  const std::function<double(double, double)>& f) {
    const double h = 1.0 / static_cast<double>(M);
    const double tau = T / static_cast<double>(N);
    const auto l = oracle::tempered_coeffs_oracle(gamma - 1.0, lambda, tau, N + 1).l;
    const double half = 0.5 * std::pow(tau, gamma);

    std::vector<std::vector<double>> u(1, std::vector<double>(M - 1, 0.0));
    for (std::size_t n = 0; n < N; ++n) {
        std::vector<double> rhs = u[n];
        // Explicit memory: l_0 u^n plus sum_{k>=1} l_k (u^{n+1-k} + u^{n-k}); Laplacian is linear.
        std::vector<double> mem(M - 1, 0.0);
        for (std::size_t k = n + 1; k-- > 0;) {
            for (std::size_t i = 0; i < M - 1; ++i) {
                mem[i] += l[k] * (k == 0 ? u[n][i] : u[n + 1 - k][i] + u[n - k][i]);
            }
        }
        const auto lap = classical_laplacian(mem, h);
        const double t_mid = (static_cast<double>(n) + 0.5) * tau;
        for (std::size_t i = 0; i < M - 1; ++i) {
            rhs[i] += half * lap[i] + tau * f(static_cast<double>(i + 1) * h, t_mid);
        }
        u.push_back(thomas(half * l[0] / (h * h), rhs));
    }
    return u.back();
}

} // namespace twave::testing
