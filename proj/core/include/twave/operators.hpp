#pragma once

#include "twave/kernels.hpp"
#include "twave/toeplitz.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace twave {

/// Discrete Riesz derivative on the M-1 interior nodes of a uniform grid with
/// homogeneous Dirichlet data: u -> prefactor * A_alpha u.
///
/// prefactor = -kappa / (Gamma(4 - alpha) h^alpha) is positive and A_alpha is
/// negative definite, so the operator is negative definite.
struct DiscreteRiesz {
    RieszStencil stencil;
    SymToeplitz matrix; ///< A_alpha
    double h = 0.0;
    double prefactor = 0.0;

    [[nodiscard]] std::size_t dim() const noexcept { return matrix.dim(); }

    /// Throws ContractViolation on a length mismatch.
    void apply(std::span<const double> u, std::span<double> out) const;
    [[nodiscard]] std::vector<double> apply(std::span<const double> u) const;

    /// prefactor * A_alpha as a dense matrix.
    [[nodiscard]] Eigen::MatrixXd to_dense() const;
};

/// Assembles A_alpha for M subintervals of width h (M - 1 unknowns).
/// first_row = [2 w_1, w_0 + w_2, w_3, ..., w_{M-1}].
[[nodiscard]] DiscreteRiesz assemble_riesz(double alpha, std::size_t M, double h);

struct DefinitenessReport {
    double max_rayleigh_quotient = 0.0; ///< largest (Du, u)/(u, u) over random trials
    double max_eigenvalue = 0.0;        ///< closest to zero; < 0 for a negative definite D
    double min_eigenvalue = 0.0;
    bool negative_definite = false;
};

/// Random quadratic forms plus a dense symmetric eigen-solve of the operator.
/// negative_definite holds when every trial quadratic form and the top
/// eigenvalue are strictly negative.
[[nodiscard]] DefinitenessReport definiteness_check(const DiscreteRiesz& op, std::size_t trials,
                                                    std::uint64_t seed = 1);

} // namespace twave
