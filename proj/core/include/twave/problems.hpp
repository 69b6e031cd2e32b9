#pragma once

#include <functional>
#include <optional>
#include <string>

namespace twave {

using SpaceTimeFn = std::function<double(double x, double t)>;
using SpaceFn = std::function<double(double x)>;

/// Continuous problem
///   du/dt = I_t^{gamma-1, lambda} Riesz_x^alpha u + f(x, t)   on (a, b) x (0, T],
/// with homogeneous Dirichlet data.
struct ProblemSpec {
    std::string name;
    double alpha = 1.5;
    double gamma = 2.0;
    double lambda = 0.0;
    double a = 0.0;
    double b = 1.0;
    double horizon = 0.5;
    SpaceTimeFn forcing;
    std::optional<SpaceTimeFn> exact;
    /// Initial data; empty means u0 = 0. Only zero initial data is supported.
    SpaceFn u0;

    [[nodiscard]] double beta() const noexcept { return gamma - 1.0; }

    /// Throws DomainError naming the offending field.
    void validate() const;
};

/// Manufactured instance on (0, 1), T = 1/2, with exact solution
///   u(x, t) = e^{-lambda t} t^3 x^2 (1 - x)^2
/// and the matching forcing.
[[nodiscard]] ProblemSpec manufactured_problem(double alpha, double gamma, double lambda);

/// Bracket
///   2 (x^{2-a} + (1-x)^{2-a}) / G(3-a) - 12 (x^{3-a} + (1-x)^{3-a}) / G(4-a)
///     + 24 (x^{4-a} + (1-x)^{4-a}) / G(5-a),
/// the sum of left and right Riemann-Liouville derivatives of x^2 (1-x)^2.
/// Endpoints evaluate to the one-sided limits.
[[nodiscard]] double manufactured_riesz_bracket(double x, double alpha);

/// Riesz derivative of x^2 (1 - x)^2 on (0, 1): -kappa_alpha times the bracket.
[[nodiscard]] double exact_riesz_of_manufactured(double x, double alpha);

} // namespace twave
