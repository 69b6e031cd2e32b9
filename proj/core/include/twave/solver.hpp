#pragma once

#include "twave/kernels.hpp"
#include "twave/operators.hpp"
#include "twave/problems.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace twave {

/// Uniform grid: x_i = a + i h (i = 0..M), t_n = n tau (n = 0..N).
struct Discretization {
    double a = 0.0;
    double b = 1.0;
    double horizon = 1.0;
    std::size_t M = 0;
    std::size_t N = 0;

    [[nodiscard]] double h() const noexcept { return (b - a) / static_cast<double>(M); }
    [[nodiscard]] double tau() const noexcept { return horizon / static_cast<double>(N); }
    [[nodiscard]] double x(std::size_t i) const noexcept {
        return i == M ? b : a + static_cast<double>(i) * h();
    }
    [[nodiscard]] double t(std::size_t n) const noexcept {
        return n == N ? horizon : static_cast<double>(n) * tau();
    }
    /// x_1 ... x_{M-1}
    [[nodiscard]] std::vector<double> interior_nodes() const;

    /// Grid for `problem` with M and N subintervals.
    [[nodiscard]] static Discretization for_problem(const ProblemSpec& problem, std::size_t M,
                                                    std::size_t N);
    /// Grid with h = tau = step: M = (b - a)/step, N = T/step, both rounded and
    /// required to be integral to 1e-9.
    [[nodiscard]] static Discretization with_equal_steps(const ProblemSpec& problem, double step);
};

/// Cholesky factor of S = I - (tau^gamma l_0 / 2) D, reused for every step.
class StepMatrix {
public:
    StepMatrix() = default;
    StepMatrix(Eigen::MatrixXd matrix, double implicit_weight);

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    /// tau^gamma l_0 / 2
    [[nodiscard]] double implicit_weight() const noexcept { return implicit_weight_; }

    void solve(std::span<const double> rhs, std::span<double> out) const;

private:
    Eigen::MatrixXd matrix_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double implicit_weight_ = 0.0;
};

/// Throws InvariantViolation if the factorization fails (S must be SPD).
[[nodiscard]] StepMatrix build_step_matrix(const DiscreteRiesz& op, double gamma, double l0,
                                           double tau);

/// State of the time march after n steps. history[m] = D u^m for m = 0..n.
struct SolverState {
    std::size_t n = 0;
    std::vector<double> u;
    std::vector<std::vector<double>> history;
};

struct MarchOptions {
    /// Kahan-compensated accumulation of the history convolution.
    bool compensated = false;
};

/// Crank-Nicolson march with tempered convolution memory:
///   u^{n+1} - u^n = (tau^gamma/2) sum_{k=0}^{n} l_k D(u^{n+1-k} + u^{n-k}) + tau f^{n+1/2}.
/// Only the k = 0 contribution of u^{n+1} is implicit.
class TimeMarcher {
public:
    /// `coeffs` must hold at least as many entries as steps that will be taken.
    TimeMarcher(DiscreteRiesz op, TemperedCoeffs coeffs, double gamma, double tau,
                std::vector<double> initial, MarchOptions options = {});

    [[nodiscard]] const SolverState& state() const noexcept { return state_; }
    [[nodiscard]] const DiscreteRiesz& op() const noexcept { return op_; }
    [[nodiscard]] const TemperedCoeffs& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] const StepMatrix& step_matrix() const noexcept { return step_matrix_; }
    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }

    /// Explicit part of the step: u^n + (tau^gamma/2)[l_0 w^n + sum_{k=1}^{n}
    /// l_k (w^{n+1-k} + w^{n-k})] + tau f, with w^m = D u^m.
    [[nodiscard]] std::vector<double> assemble_rhs(std::span<const double> forcing_mid) const;

    /// Advances to n + 1 with the forcing sampled at t_{n+1/2} on interior nodes.
    void step(std::span<const double> forcing_mid);

    /// max_i |u^{n} - rhs - weight * l_0 w^{n}| of the most recent step.
    [[nodiscard]] double last_residual() const noexcept { return last_residual_; }

private:
    DiscreteRiesz op_;
    TemperedCoeffs coeffs_;
    double gamma_;
    double tau_;
    double weight_; ///< tau^gamma / 2
    MarchOptions options_;
    StepMatrix step_matrix_;
    SolverState state_;
    double last_residual_ = 0.0;
};

struct Snapshot {
    std::size_t n = 0;
    double t = 0.0;
    std::vector<double> u;
};

struct LinearSolveDiagnostics {
    std::size_t steps = 0;
    double max_plug_back_residual = 0.0;
    double step_matrix_min_diagonal = 0.0;
};

struct SolveOptions {
    MarchOptions march;
    /// Keep u every `snapshot_stride` steps (and the final one); 0 keeps none.
    std::size_t snapshot_stride = 0;
    /// Called after each step with (n, t_n, u^n on interior nodes).
    std::function<void(std::size_t, double, std::span<const double>)> observer;
};

struct SolveResult {
    Discretization disc;
    std::vector<double> x; ///< interior nodes
    std::vector<double> u; ///< u^N on interior nodes
    std::vector<Snapshot> snapshots;
    double wall_ms = 0.0;
    LinearSolveDiagnostics diagnostics;
};

/// Runs N steps from u^0 = 0. Throws UnsupportedFeature if problem.u0 is
/// nonzero on the grid, DomainError on invalid parameters.
[[nodiscard]] SolveResult solve(const ProblemSpec& problem, const Discretization& disc,
                                const SolveOptions& options = {});

} // namespace twave
