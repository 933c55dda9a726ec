#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace galerkin {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// n points in R^d stored row-major, one point per row. Every entry is finite
/// and both n and d are at least one.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(RowMatrix points);

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }
    [[nodiscard]] bool empty() const { return points_.rows() == 0; }

    [[nodiscard]] const RowMatrix& points() const { return points_; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const
    {
        return {points_.data() + i * dim(), dim()};
    }

    /// Rows at the given indices, in the given order.
    [[nodiscard]] Dataset subset(std::span<const std::size_t> indices) const;

    /// First `count` rows.
    [[nodiscard]] Dataset head(std::size_t count) const;

    /// Squared Euclidean norm of every row.
    [[nodiscard]] Vector squared_norms() const;

private:
    RowMatrix points_;
};

/// Seeded uniform subsample of `count` distinct indices out of [0, n). The
/// result for (n, count) is a prefix of the result for (n, count') whenever
/// count <= count' and the seed is the same, so landmark sets are nested.
std::vector<std::size_t> sample_landmark_indices(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace galerkin
