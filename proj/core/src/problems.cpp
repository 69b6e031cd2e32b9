#include "twave/problems.hpp"

#include "twave/errors.hpp"

#include <cmath>
#include <numbers>

namespace twave {

void ProblemSpec::validate() const {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw DomainError("alpha must lie in (1, 2]");
    }
    if (!(gamma > 1.0 && gamma <= 2.0)) {
        throw DomainError("gamma must lie in (1, 2]");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("lambda must be >= 0");
    }
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("domain must satisfy a < b");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw DomainError("t-final must be > 0");
    }
    if (!forcing) {
        throw DomainError("forcing must be set");
    }
}

double manufactured_riesz_bracket(double x, double alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw DomainError("alpha must lie in (1, 2]");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("x must lie in [0, 1]");
    }
    const double y = 1.0 - x;
    auto both = [&](double p) { return std::pow(x, p) + std::pow(y, p); };
    return 2.0 * both(2.0 - alpha) / std::tgamma(3.0 - alpha) -
           12.0 * both(3.0 - alpha) / std::tgamma(4.0 - alpha) +
           24.0 * both(4.0 - alpha) / std::tgamma(5.0 - alpha);
}

double exact_riesz_of_manufactured(double x, double alpha) {
    const double kappa = 1.0 / (2.0 * std::cos(alpha * std::numbers::pi / 2.0));
    return -kappa * manufactured_riesz_bracket(x, alpha);
}

ProblemSpec manufactured_problem(double alpha, double gamma, double lambda) {
    ProblemSpec p;
    p.name = "manufactured";
    p.alpha = alpha;
    p.gamma = gamma;
    p.lambda = lambda;
    p.a = 0.0;
    p.b = 1.0;
    p.horizon = 0.5;

    // Gamma(4) / (2 Gamma(3 + gamma) cos(alpha pi / 2)); negative for alpha < 2.
    const double memory_scale =
        std::tgamma(4.0) / (2.0 * std::tgamma(3.0 + gamma) * std::cos(alpha * std::numbers::pi / 2.0));

    p.forcing = [alpha, gamma, lambda, memory_scale](double x, double t) {
        const double decay = std::exp(-lambda * t);
        const double shape = x * x * (x - 1.0) * (x - 1.0);
        const double time_part = (3.0 * decay * t * t - lambda * decay * t * t * t) * shape;
        const double memory_part =
            memory_scale * decay * std::pow(t, 2.0 + gamma) * manufactured_riesz_bracket(x, alpha);
        return time_part + memory_part;
    };
    p.exact = [lambda](double x, double t) {
        return std::exp(-lambda * t) * t * t * t * x * x * (1.0 - x) * (1.0 - x);
    };
    p.validate();
    return p;
}

} // namespace twave
