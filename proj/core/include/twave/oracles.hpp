#pragma once

// Independent reference computations. Nothing here shares code with the
// production coefficient or operator paths; the verification suite and tests
// compare the two.

#include "twave/kernels.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace twave::oracle {

/// Taylor coefficients of P(z)^power for a polynomial P with P(0) != 0, by
/// the J.C.P. Miller recurrence.
[[nodiscard]] std::vector<double> power_series_pow(std::span<const double> poly, double power,
                                                   std::size_t count);

/// l_k as Taylor coefficients of (1 - q z)^{-beta} (1 + (1 - q z)/2)^{-beta},
/// q = e^{-lambda tau}: each factor expanded on its own, then multiplied as
/// truncated series. O(count^2); count <= 4096.
[[nodiscard]] TemperedCoeffs tempered_coeffs_oracle(double beta, double lambda, double tau,
                                                    std::size_t count);

/// Riesz derivative of a function supported on [a, b] at x by Grünwald-Letnikov
/// sums for the left and right Riemann-Liouville derivatives, with one
/// Richardson step (h and h/2).
[[nodiscard]] double grunwald_riesz_derivative(const std::function<double(double)>& u, double a,
                                               double b, double x, double alpha, double h);

} // namespace twave::oracle
