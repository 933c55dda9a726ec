#include "galerkin/dataset.hpp"

#include "galerkin/errors.hpp"

#include <numeric>
#include <random>
#include <string>

namespace galerkin {

Dataset::Dataset(RowMatrix points) : points_(std::move(points))
{
    if (points_.rows() < 1 || points_.cols() < 1) {
        throw InputError("dataset needs at least one point and one dimension");
    }
    if (!points_.allFinite()) {
        throw InputError("dataset contains non-finite entries");
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const
{
    RowMatrix out(static_cast<Eigen::Index>(indices.size()), points_.cols());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        if (indices[r] >= size()) {
            throw InputError("subset index " + std::to_string(indices[r]) + " out of range");
        }
        out.row(static_cast<Eigen::Index>(r)) = points_.row(static_cast<Eigen::Index>(indices[r]));
    }
    return Dataset(std::move(out));
}

Dataset Dataset::head(std::size_t count) const
{
    if (count > size()) {
        throw InputError("head(" + std::to_string(count) + ") exceeds dataset size " + std::to_string(size()));
    }
    return Dataset(points_.topRows(static_cast<Eigen::Index>(count)));
}

Vector Dataset::squared_norms() const
{
    return points_.rowwise().squaredNorm();
}

std::vector<std::size_t> sample_landmark_indices(std::size_t n, std::size_t count, std::uint64_t seed)
{
    if (count > n) {
        throw InputError("cannot draw " + std::to_string(count) + " landmarks from " + std::to_string(n) + " points");
    }
    // Partial Fisher-Yates: position r only depends on the first r draws, so
    // prefixes are nested across counts.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t r = 0; r < count; ++r) {
        std::uniform_int_distribution<std::size_t> pick(r, n - 1);
        std::swap(perm[r], perm[pick(rng)]);
    }
    perm.resize(count);
    return perm;
}

}  // namespace galerkin
