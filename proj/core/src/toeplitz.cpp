#include "twave/toeplitz.hpp"

#include "twave/errors.hpp"

namespace twave {

void SymToeplitz::multiply(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = dim();
    if (in.size() != n || out.size() != n) {
        throw ContractViolation("SymToeplitz::multiply: dimension mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += first_row_[i > j ? i - j : j - i] * in[j];
        }
        out[i] = acc;
    }
}

std::vector<double> SymToeplitz::multiply(std::span<const double> in) const {
    std::vector<double> out(dim());
    multiply(in, out);
    return out;
}

Eigen::MatrixXd SymToeplitz::to_dense() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return m;
}

} // namespace twave
