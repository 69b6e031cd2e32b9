#include "twave/solver.hpp"

#include "twave/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace twave {

std::vector<double> Discretization::interior_nodes() const {
    std::vector<double> xs;
    xs.reserve(M > 0 ? M - 1 : 0);
    for (std::size_t i = 1; i < M; ++i) {
        xs.push_back(x(i));
    }
    return xs;
}

Discretization Discretization::for_problem(const ProblemSpec& problem, std::size_t M,
                                           std::size_t N) {
    if (M < 3) {
        throw ContractViolation("need M >= 3 space intervals");
    }
    if (N < 1) {
        throw ContractViolation("need N >= 1 time steps");
    }
    return Discretization{problem.a, problem.b, problem.horizon, M, N};
}

Discretization Discretization::with_equal_steps(const ProblemSpec& problem, double step) {
    if (!(step > 0.0)) {
        throw DomainError("step must be > 0");
    }
    const double m = (problem.b - problem.a) / step;
    const double n = problem.horizon / step;
    if (std::abs(m - std::round(m)) > 1e-9 * m || std::abs(n - std::round(n)) > 1e-9 * n) {
        throw DomainError("step " + std::to_string(step) +
                          " does not divide both the domain length and the horizon");
    }
    return for_problem(problem, static_cast<std::size_t>(std::lround(m)),
                       static_cast<std::size_t>(std::lround(n)));
}

StepMatrix::StepMatrix(Eigen::MatrixXd matrix, double implicit_weight)
    : matrix_(std::move(matrix)), llt_(matrix_), implicit_weight_(implicit_weight) {
    if (llt_.info() != Eigen::Success) {
        throw InvariantViolation("step matrix I - (tau^gamma l_0/2) D is not positive definite");
    }
}

void StepMatrix::solve(std::span<const double> rhs, std::span<double> out) const {
    if (rhs.size() != dim() || out.size() != dim()) {
        throw ContractViolation("StepMatrix::solve: dimension mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    Eigen::Map<Eigen::VectorXd> x(out.data(), static_cast<Eigen::Index>(out.size()));
    x = llt_.solve(b);
}

StepMatrix build_step_matrix(const DiscreteRiesz& op, double gamma, double l0, double tau) {
    if (!(tau > 0.0) || !(gamma > 1.0 && gamma <= 2.0) || !(l0 > 0.0)) {
        throw DomainError("build_step_matrix: need tau > 0, gamma in (1, 2], l0 > 0");
    }
    const double weight = 0.5 * std::pow(tau, gamma) * l0;
    const auto n = static_cast<Eigen::Index>(op.dim());
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n) - weight * op.to_dense();
    return StepMatrix(std::move(s), weight);
}

TimeMarcher::TimeMarcher(DiscreteRiesz op, TemperedCoeffs coeffs, double gamma, double tau,
                         std::vector<double> initial, MarchOptions options)
    : op_(std::move(op)),
      coeffs_(std::move(coeffs)),
      gamma_(gamma),
      tau_(tau),
      weight_(0.5 * std::pow(tau, gamma)),
      options_(options) {
    if (initial.size() != op_.dim()) {
        throw ContractViolation("initial vector length does not match operator");
    }
    if (coeffs_.size() < 1) {
        throw ContractViolation("need at least one quadrature coefficient");
    }
    step_matrix_ = build_step_matrix(op_, gamma_, coeffs_[0], tau_);
    state_.u = std::move(initial);
    state_.history.push_back(op_.apply(state_.u));
}

std::vector<double> TimeMarcher::assemble_rhs(std::span<const double> forcing_mid) const {
    const std::size_t n = state_.n;
    const std::size_t dim = op_.dim();
    if (forcing_mid.size() != dim) {
        throw ContractViolation("forcing length does not match operator");
    }
    if (coeffs_.size() < n + 1) {
        throw ContractViolation("step " + std::to_string(n + 1) + " needs " +
                                std::to_string(n + 1) + " quadrature coefficients, have " +
                                std::to_string(coeffs_.size()));
    }
    const auto& hist = state_.history;

    // Memory term l_0 w^n + sum_{k=1}^{n} l_k (w^{n+1-k} + w^{n-k}), k ascending.
    std::vector<double> memory(dim);
    const auto& wn = hist[n];
    for (std::size_t i = 0; i < dim; ++i) {
        memory[i] = coeffs_[0] * wn[i];
    }
    if (options_.compensated) {
        std::vector<double> carry(dim, 0.0);
        for (std::size_t k = 1; k <= n; ++k) {
            const auto& newer = hist[n + 1 - k];
            const auto& older = hist[n - k];
            const double lk = coeffs_[k];
            for (std::size_t i = 0; i < dim; ++i) {
                const double y = lk * (newer[i] + older[i]) - carry[i];
                const double t = memory[i] + y;
                carry[i] = (t - memory[i]) - y;
                memory[i] = t;
            }
        }
    } else {
        for (std::size_t k = 1; k <= n; ++k) {
            const auto& newer = hist[n + 1 - k];
            const auto& older = hist[n - k];
            const double lk = coeffs_[k];
            for (std::size_t i = 0; i < dim; ++i) {
                memory[i] += lk * (newer[i] + older[i]);
            }
        }
    }

    std::vector<double> rhs(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        rhs[i] = state_.u[i] + weight_ * memory[i] + tau_ * forcing_mid[i];
    }
    return rhs;
}

void TimeMarcher::step(std::span<const double> forcing_mid) {
    const std::vector<double> rhs = assemble_rhs(forcing_mid);
    std::vector<double> next(op_.dim());
    step_matrix_.solve(rhs, next);
    std::vector<double> w_next = op_.apply(next);

    const double implicit = weight_ * coeffs_[0];
    double residual = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        residual = std::max(residual, std::abs(next[i] - rhs[i] - implicit * w_next[i]));
    }
    last_residual_ = residual;

    state_.u = std::move(next);
    state_.history.push_back(std::move(w_next));
    ++state_.n;
}

SolveResult solve(const ProblemSpec& problem, const Discretization& disc,
                  const SolveOptions& options) {
    problem.validate();
    if (disc.M < 3 || disc.N < 1) {
        throw ContractViolation("discretization needs M >= 3 and N >= 1");
    }
    const auto start = std::chrono::steady_clock::now();

    SolveResult result;
    result.disc = disc;
    result.x = disc.interior_nodes();
    const std::size_t dim = result.x.size();

    if (problem.u0) {
        for (std::size_t i = 0; i <= disc.M; ++i) {
            if (problem.u0(disc.x(i)) != 0.0) {
                throw UnsupportedFeature("nonzero initial data is not supported");
            }
        }
    }

    const double tau = disc.tau();
    DiscreteRiesz op = assemble_riesz(problem.alpha, disc.M, disc.h());
    TemperedCoeffs coeffs = tempered_coeffs(problem.beta(), problem.lambda, tau, disc.N + 1);
    TimeMarcher marcher(std::move(op), std::move(coeffs), problem.gamma, tau,
                        std::vector<double>(dim, 0.0), options.march);

    const auto& s = marcher.step_matrix().matrix();
    result.diagnostics.step_matrix_min_diagonal = s.diagonal().minCoeff();

    std::vector<double> forcing(dim);
    for (std::size_t n = 0; n < disc.N; ++n) {
        const double t_mid = (static_cast<double>(n) + 0.5) * tau;
        for (std::size_t i = 0; i < dim; ++i) {
            forcing[i] = problem.forcing(result.x[i], t_mid);
        }
        marcher.step(forcing);
        result.diagnostics.max_plug_back_residual =
            std::max(result.diagnostics.max_plug_back_residual, marcher.last_residual());

        const std::size_t step_index = n + 1;
        const auto& u = marcher.state().u;
        if (options.observer) {
            options.observer(step_index, disc.t(step_index), u);
        }
        const bool last = step_index == disc.N;
        if (options.snapshot_stride > 0 && (step_index % options.snapshot_stride == 0 || last)) {
            result.snapshots.push_back(Snapshot{step_index, disc.t(step_index), u});
        }
    }
    result.diagnostics.steps = disc.N;
    result.u = marcher.state().u;
    result.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace twave
