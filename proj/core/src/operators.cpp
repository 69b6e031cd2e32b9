#include "twave/operators.hpp"

#include "twave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace twave {

void DiscreteRiesz::apply(std::span<const double> u, std::span<double> out) const {
    if (u.size() != dim() || out.size() != dim()) {
        throw ContractViolation("DiscreteRiesz::apply: vector length does not match operator");
    }
    matrix.multiply(u, out);
    for (double& v : out) {
        v *= prefactor;
    }
}

std::vector<double> DiscreteRiesz::apply(std::span<const double> u) const {
    std::vector<double> out(dim());
    apply(u, out);
    return out;
}

Eigen::MatrixXd DiscreteRiesz::to_dense() const { return prefactor * matrix.to_dense(); }

DiscreteRiesz assemble_riesz(double alpha, std::size_t M, double h) {
    if (M < 3) {
        throw ContractViolation("assemble_riesz needs M >= 3 (two interior nodes)");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw DomainError("assemble_riesz: h must be > 0");
    }
    DiscreteRiesz op;
    op.stencil = riesz_weights(alpha, std::max<std::size_t>(4, M));
    const auto& w = op.stencil.weights;

    std::vector<double> row(M - 1);
    row[0] = 2.0 * w[1];
    row[1] = w[0] + w[2];
    for (std::size_t j = 2; j < row.size(); ++j) {
        row[j] = w[j + 1];
    }
    op.matrix = SymToeplitz(std::move(row));
    op.h = h;
    op.prefactor = -op.stencil.kappa / (op.stencil.gamma_4_minus_alpha * std::pow(h, alpha));
    return op;
}

DefinitenessReport definiteness_check(const DiscreteRiesz& op, std::size_t trials,
                                      std::uint64_t seed) {
    if (trials < 1) {
        throw ContractViolation("definiteness_check needs trials >= 1");
    }
    DefinitenessReport rep;
    rep.max_rayleigh_quotient = -std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> u(op.dim());
    std::vector<double> du(op.dim());
    for (std::size_t t = 0; t < trials; ++t) {
        std::generate(u.begin(), u.end(), [&] { return dist(rng); });
        op.apply(u, du);
        double form = 0.0;
        double norm2 = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            form += du[i] * u[i];
            norm2 += u[i] * u[i];
        }
        rep.max_rayleigh_quotient = std::max(rep.max_rayleigh_quotient, form / norm2);
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.to_dense(),
                                                             Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = eig.eigenvalues().minCoeff();
    rep.max_eigenvalue = eig.eigenvalues().maxCoeff();
    rep.negative_definite = rep.max_rayleigh_quotient < 0.0 && rep.max_eigenvalue < 0.0;
    return rep;
}

} // namespace twave
