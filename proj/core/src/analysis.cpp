#include "twave/analysis.hpp"

#include "twave/errors.hpp"
#include "twave/operators.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <random>

namespace twave {

ErrorReport error_report(std::span<const double> numeric, std::span<const double> exact, double h,
                         std::size_t M, std::size_t N) {
    if (numeric.size() != exact.size()) {
        throw ContractViolation("error_report: length mismatch");
    }
    ErrorReport r;
    r.M = M;
    r.N = N;
    double sq = 0.0;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        const double e = numeric[i] - exact[i];
        r.max_error = std::max(r.max_error, std::abs(e));
        sq += e * e;
    }
    r.l2_error = std::sqrt(h * sq);
    return r;
}

std::vector<double> sample_exact(const ProblemSpec& problem, std::span<const double> x, double t) {
    if (!problem.exact) {
        throw ContractViolation("problem '" + problem.name + "' has no exact solution");
    }
    std::vector<double> out(x.size());
    std::transform(x.begin(), x.end(), out.begin(),
                   [&](double xi) { return (*problem.exact)(xi, t); });
    return out;
}

double ConvergenceReport::fitted_order() const {
    if (rows.size() < 2) {
        throw ContractViolation("fitted_order needs at least two rows");
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& r : rows) {
        mx += std::log(r.tau);
        my += std::log(r.max_error);
    }
    mx /= static_cast<double>(rows.size());
    my /= static_cast<double>(rows.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& r : rows) {
        const double dx = std::log(r.tau) - mx;
        sxy += dx * (std::log(r.max_error) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

std::vector<Discretization> equal_step_resolutions(const ProblemSpec& problem,
                                                   std::span<const std::size_t> inverse_steps) {
    std::vector<Discretization> out;
    out.reserve(inverse_steps.size());
    for (std::size_t k : inverse_steps) {
        if (k == 0) {
            throw DomainError("resolution must be positive");
        }
        out.push_back(Discretization::with_equal_steps(problem, 1.0 / static_cast<double>(k)));
    }
    return out;
}

namespace {

ConvergenceRow run_resolution(const ProblemSpec& problem, const Discretization& disc,
                              const MarchOptions& march) {
    const std::vector<double> x = disc.interior_nodes();
    double all_times = 0.0;
    SolveOptions opts;
    opts.march = march;
    opts.observer = [&](std::size_t, double t, std::span<const double> u) {
        const auto ex = sample_exact(problem, x, t);
        for (std::size_t i = 0; i < u.size(); ++i) {
            all_times = std::max(all_times, std::abs(u[i] - ex[i]));
        }
    };
    const SolveResult res = solve(problem, disc, opts);
    const auto exact = sample_exact(problem, res.x, disc.horizon);
    const ErrorReport err = error_report(res.u, exact, disc.h(), disc.M, disc.N);

    ConvergenceRow row;
    row.tau = disc.tau();
    row.h = disc.h();
    row.M = disc.M;
    row.N = disc.N;
    row.max_error = err.max_error;
    row.l2_error = err.l2_error;
    row.max_error_all_times = all_times;
    row.wall_ms = res.wall_ms;
    return row;
}

} // namespace

ConvergenceReport convergence_study(const ProblemSpec& problem,
                                    std::span<const Discretization> resolutions,
                                    const ConvergenceOptions& options) {
    problem.validate();
    if (resolutions.size() < 2) {
        throw ContractViolation("convergence_study needs at least two resolutions");
    }
    if (!problem.exact) {
        throw ContractViolation("convergence_study needs a problem with an exact solution");
    }

    std::vector<Discretization> order(resolutions.begin(), resolutions.end());
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& l, const auto& r) { return l.tau() > r.tau(); });

    ConvergenceReport rep;
    rep.alpha = problem.alpha;
    rep.gamma = problem.gamma;
    rep.lambda = problem.lambda;
    rep.rows.resize(order.size());
    if (options.parallel) {
        std::vector<std::future<ConvergenceRow>> jobs;
        jobs.reserve(order.size());
        for (const auto& disc : order) {
            jobs.push_back(std::async(std::launch::async, run_resolution, std::cref(problem),
                                      std::cref(disc), std::cref(options.march)));
        }
        for (std::size_t r = 0; r < jobs.size(); ++r) {
            rep.rows[r] = jobs[r].get();
        }
    } else {
        for (std::size_t r = 0; r < order.size(); ++r) {
            rep.rows[r] = run_resolution(problem, order[r], options.march);
        }
    }
    for (std::size_t r = 1; r < rep.rows.size(); ++r) {
        const auto& prev = rep.rows[r - 1];
        auto& cur = rep.rows[r];
        cur.rate = std::log(prev.max_error / cur.max_error) / std::log(prev.tau / cur.tau);
    }
    return rep;
}

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report) {
    os << "tau,h,max_error,rate\n";
    for (const auto& r : report.rows) {
        os << fmt::format("{:.17g},{:.17g},{:.17g},", r.tau, r.h, r.max_error);
        if (r.rate) {
            os << fmt::format("{:.17g}", *r.rate);
        }
        os << '\n';
    }
}

LBetaMatrix build_L_matrix(const TemperedCoeffs& coeffs, std::size_t N) {
    if (coeffs.size() < N + 1) {
        throw ContractViolation("build_L_matrix needs N+1 coefficients");
    }
    std::vector<double> row(N + 1);
    row[0] = coeffs[0];
    for (std::size_t k = 1; k <= N; ++k) {
        row[k] = 0.5 * coeffs[k];
    }
    return LBetaMatrix{SymToeplitz(std::move(row))};
}

PsdReport psd_check(const LBetaMatrix& L) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L.matrix.to_dense(),
                                                             Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
        throw InvariantViolation("psd_check: eigen-solve did not converge");
    }
    PsdReport r;
    r.min_eigenvalue = eig.eigenvalues().minCoeff();
    r.norm = eig.eigenvalues().cwiseAbs().maxCoeff();
    r.is_psd = r.min_eigenvalue >= -1e-10 * r.norm;
    return r;
}

double quadratic_form(const LBetaMatrix& L, std::span<const double> v) {
    const auto lv = L.matrix.multiply(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += lv[i] * v[i];
    }
    return acc;
}

std::vector<double> perturbation_norms(double alpha, double gamma, double lambda, std::size_t M,
                                       std::size_t N, double tau, std::vector<double> initial) {
    const double h = 1.0 / static_cast<double>(M);
    auto norm = [h](std::span<const double> e) {
        double s = 0.0;
        for (double v : e) {
            s += v * v;
        }
        return std::sqrt(h * s);
    };

    TimeMarcher marcher(assemble_riesz(alpha, M, h), tempered_coeffs(gamma - 1.0, lambda, tau, N),
                        gamma, tau, std::move(initial));
    std::vector<double> norms;
    norms.reserve(N + 1);
    norms.push_back(norm(marcher.state().u));
    const std::vector<double> zero(marcher.op().dim(), 0.0);
    for (std::size_t n = 0; n < N; ++n) {
        marcher.step(zero);
        norms.push_back(norm(marcher.state().u));
    }
    return norms;
}

std::vector<double> stability_experiment(double alpha, double gamma, double lambda, std::size_t M,
                                         std::size_t N, double tau, std::uint64_t seed) {
    if (M < 3 || N < 1) {
        throw ContractViolation("stability_experiment needs M >= 3 and N >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> eps0(M - 1);
    std::generate(eps0.begin(), eps0.end(), [&] { return dist(rng); });
    return perturbation_norms(alpha, gamma, lambda, M, N, tau, std::move(eps0));
}

double tempered_quadrature(const ScalarFn& v, const TemperedCoeffs& coeffs, std::size_t n) {
    if (coeffs.size() < n + 1) {
        throw ContractViolation("tempered_quadrature needs n+1 coefficients");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        acc += coeffs[k] * v(static_cast<double>(n - k) * coeffs.tau);
    }
    return std::pow(coeffs.tau, coeffs.beta) * acc;
}

double tempered_integral_reference(const ScalarFn& v, double beta, double lambda, double t,
                                   double tolerance) {
    if (!(beta > 0.0)) {
        throw DomainError("tempered_integral_reference needs beta > 0");
    }
    // Substituting s = t - r puts the weak singularity at r = 0.
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto integrand = [&](double r) {
        return std::pow(r, beta - 1.0) * std::exp(-lambda * r) * v(t - r);
    };
    return integrator.integrate(integrand, 0.0, t, tolerance) / std::tgamma(beta);
}

QuadratureOrderReport quadrature_order_study(const ScalarFn& v, double beta, double lambda,
                                             double t_final, std::span<const std::size_t> steps) {
    const double reference = tempered_integral_reference(v, beta, lambda, t_final);
    QuadratureOrderReport rep;
    for (std::size_t n : steps) {
        const double tau = t_final / static_cast<double>(n);
        const auto coeffs = tempered_coeffs(beta, lambda, tau, n + 1);
        rep.taus.push_back(tau);
        rep.errors.push_back(std::abs(tempered_quadrature(v, coeffs, n) - reference));
    }
    for (std::size_t r = 1; r < rep.errors.size(); ++r) {
        rep.ratios.push_back(rep.errors[r - 1] / rep.errors[r]);
    }
    return rep;
}

} // namespace twave
