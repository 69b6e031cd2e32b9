#pragma once

#include "twave/kernels.hpp"
#include "twave/problems.hpp"
#include "twave/solver.hpp"
#include "twave/toeplitz.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace twave {

/// Errors over interior nodes. l2_error uses (u, v) = h sum u_i v_i.
struct ErrorReport {
    double max_error = 0.0;
    double l2_error = 0.0;
    std::size_t M = 0;
    std::size_t N = 0;
};

[[nodiscard]] ErrorReport error_report(std::span<const double> numeric,
                                       std::span<const double> exact, double h, std::size_t M = 0,
                                       std::size_t N = 0);

/// Exact solution sampled on the interior nodes at time t.
[[nodiscard]] std::vector<double> sample_exact(const ProblemSpec& problem,
                                               std::span<const double> x, double t);

struct ConvergenceRow {
    double tau = 0.0;
    double h = 0.0;
    std::size_t M = 0;
    std::size_t N = 0;
    double max_error = 0.0;           ///< at the final time
    double l2_error = 0.0;            ///< at the final time
    double max_error_all_times = 0.0; ///< max over every time level
    std::optional<double> rate;       ///< log(e_{r-1}/e_r) / log(tau_{r-1}/tau_r)
    double wall_ms = 0.0;
};

struct ConvergenceReport {
    double alpha = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;
    std::vector<ConvergenceRow> rows; ///< ordered by decreasing tau

    /// Least-squares slope of log(max_error) against log(tau).
    [[nodiscard]] double fitted_order() const;
};

/// Resolutions with h = tau = 1/k for each k in `inverse_steps`, scaled to the
/// problem's domain length and horizon.
[[nodiscard]] std::vector<Discretization> equal_step_resolutions(
    const ProblemSpec& problem, std::span<const std::size_t> inverse_steps);

struct ConvergenceOptions {
    /// Run member solves on separate threads. Results are identical either way.
    bool parallel = true;
    MarchOptions march;
};

/// Solves `problem` (which must carry an exact solution) on each resolution.
[[nodiscard]] ConvergenceReport convergence_study(const ProblemSpec& problem,
                                                  std::span<const Discretization> resolutions,
                                                  const ConvergenceOptions& options = {});

/// CSV with header tau,h,max_error,rate; 17 significant digits; empty rate on row 1.
void write_convergence_csv(std::ostream& os, const ConvergenceReport& report);

/// Symmetric Toeplitz matrix with first row [l_0, l_1/2, ..., l_N/2].
struct LBetaMatrix {
    SymToeplitz matrix;
    [[nodiscard]] std::size_t dim() const noexcept { return matrix.dim(); }
};

/// (N+1) x (N+1) matrix. Throws ContractViolation if coeffs has fewer than N+1 entries.
[[nodiscard]] LBetaMatrix build_L_matrix(const TemperedCoeffs& coeffs, std::size_t N);

struct PsdReport {
    double min_eigenvalue = 0.0;
    double norm = 0.0; ///< spectral norm
    bool is_psd = false;
};

/// Dense symmetric eigen-solve; is_psd iff min_eigenvalue >= -1e-10 * norm.
[[nodiscard]] PsdReport psd_check(const LBetaMatrix& L);

/// V L V^T, equal to sum_n (sum_{k<=n} l_k v^{n-k}) v^n.
[[nodiscard]] double quadratic_form(const LBetaMatrix& L, std::span<const double> v);

/// Discrete L2 norms ||eps^n||, n = 0..N, of the homogeneous scheme on (0, 1)
/// with M intervals, step tau and a uniform random eps^0 in [-1, 1].
[[nodiscard]] std::vector<double> stability_experiment(double alpha, double gamma, double lambda,
                                                       std::size_t M, std::size_t N, double tau,
                                                       std::uint64_t seed);

/// Same march from a caller-supplied perturbation on the M-1 interior nodes.
[[nodiscard]] std::vector<double> perturbation_norms(double alpha, double gamma, double lambda,
                                                     std::size_t M, std::size_t N, double tau,
                                                     std::vector<double> initial);

using ScalarFn = std::function<double(double)>;

/// tau^beta sum_{k=0}^{n} l_k v(t_{n-k}).
[[nodiscard]] double tempered_quadrature(const ScalarFn& v, const TemperedCoeffs& coeffs,
                                         std::size_t n);

/// I_t^{beta,lambda} v at t by tanh-sinh quadrature.
[[nodiscard]] double tempered_integral_reference(const ScalarFn& v, double beta, double lambda,
                                                 double t, double tolerance = 1e-13);

struct QuadratureOrderReport {
    std::vector<double> taus;
    std::vector<double> errors;
    std::vector<double> ratios; ///< errors[r-1] / errors[r]
};

[[nodiscard]] QuadratureOrderReport quadrature_order_study(const ScalarFn& v, double beta,
                                                           double lambda, double t_final,
                                                           std::span<const std::size_t> steps);

} // namespace twave
