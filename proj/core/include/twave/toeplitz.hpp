#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace twave {

/// Symmetric Toeplitz matrix stored by its first row: entry(i, j) = first_row[|i - j|].
class SymToeplitz {
public:
    SymToeplitz() = default;
    explicit SymToeplitz(std::vector<double> first_row) : first_row_(std::move(first_row)) {}

    [[nodiscard]] std::size_t dim() const noexcept { return first_row_.size(); }
    [[nodiscard]] const std::vector<double>& first_row() const noexcept { return first_row_; }

    [[nodiscard]] double entry(std::size_t i, std::size_t j) const {
        return first_row_[i > j ? i - j : j - i];
    }

    /// out = T * in. Dense O(n^2); row-wise accumulation in ascending column order.
    void multiply(std::span<const double> in, std::span<double> out) const;
    [[nodiscard]] std::vector<double> multiply(std::span<const double> in) const;

    [[nodiscard]] Eigen::MatrixXd to_dense() const;

private:
    std::vector<double> first_row_;
};

} // namespace twave
