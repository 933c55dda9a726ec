#include "galerkin/ground_truth.hpp"

#include "galerkin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace galerkin {

GroundTruthSpectrum::GroundTruthSpectrum(std::vector<SpectrumBlock> blocks) : blocks_(std::move(blocks))
{
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (blocks_[b].multiplicity < 1) {
            throw InputError("spectrum block multiplicity must be >= 1");
        }
        if (b > 0 && !(blocks_[b].eigenvalue > blocks_[b - 1].eigenvalue)) {
            throw InputError("spectrum blocks must have strictly increasing eigenvalues");
        }
        values_.insert(values_.end(), blocks_[b].multiplicity, blocks_[b].eigenvalue);
    }
}

double GroundTruthSpectrum::sum(std::size_t k) const
{
    if (k > values_.size()) {
        throw InputError("spectrum has only " + std::to_string(values_.size()) + " values");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        s += values_[i];
    }
    return s;
}

std::uint64_t harmonic_multiplicity(int d, int s)
{
    if (d < 2 || s < 1) {
        throw InputError("harmonic multiplicity needs d >= 2 and s >= 1");
    }
    // C(s+d-3, s-1), built so every intermediate quotient is exact.
    const auto top = static_cast<std::uint64_t>(s + d - 3);
    const auto r = static_cast<std::uint64_t>(s - 1);
    std::uint64_t binom = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        binom = binom * (top - r + i) / i;
    }
    return static_cast<std::uint64_t>(2 * s + d - 2) * binom / static_cast<std::uint64_t>(s);
}

GroundTruthSpectrum sphere_spectrum(int d, std::size_t k)
{
    if (d < 2) {
        throw InputError("sphere spectrum needs d >= 2");
    }
    if (k < 1) {
        throw InputError("sphere spectrum needs k >= 1");
    }
    std::vector<SpectrumBlock> blocks;
    std::size_t count = 0;
    for (int s = 1; count < k; ++s) {
        const std::size_t mult = std::min<std::size_t>(harmonic_multiplicity(d, s), k - count);
        blocks.push_back({static_cast<double>(s) * (s + d - 2), mult});
        count += mult;
    }
    return GroundTruthSpectrum(std::move(blocks));
}

double surrogate_error(const GroundTruthSpectrum& truth, std::span<const double> estimated_inverses, std::size_t k)
{
    if (estimated_inverses.size() != k) {
        throw InputError("surrogate error: got " + std::to_string(estimated_inverses.size()) +
                         " estimated inverses for k=" + std::to_string(k));
    }
    if (truth.size() < k) {
        throw InputError("surrogate error: ground truth has fewer than k values");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double inv = 1.0 / truth.values()[i];
        num += std::abs(inv - estimated_inverses[i]);
        den += inv;
    }
    return num / den;
}

namespace {

double resolve_zero_tol(std::span<const double> values, std::optional<double> zero_tol)
{
    if (zero_tol) {
        return *zero_tol;
    }
    double m = 0.0;
    for (double v : values) {
        m = std::max(m, std::abs(v));
    }
    return 1e-8 * m;
}

}  // namespace

std::vector<double> nonzero_eigenvalues(std::span<const double> values, std::optional<double> zero_tol)
{
    const double tol = resolve_zero_tol(values, zero_tol);
    std::vector<double> kept;
    for (double v : values) {
        if (std::abs(v) > tol) {
            kept.push_back(std::max(v, tol));
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

InverseEstimate estimate_to_inverses(std::span<const double> values, std::size_t k, std::optional<double> zero_tol)
{
    const auto kept = nonzero_eigenvalues(values, zero_tol);
    InverseEstimate out{Vector::Zero(static_cast<Eigen::Index>(k)), kept.size() < k};
    for (std::size_t i = 0; i < std::min(k, kept.size()); ++i) {
        out.inverses(static_cast<Eigen::Index>(i)) = 1.0 / kept[i];
    }
    return out;
}

Dataset sample_sphere(std::size_t n, int d, std::uint64_t seed)
{
    if (d < 2) {
        throw InputError("sphere sampler needs d >= 2");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    RowMatrix pts(static_cast<Eigen::Index>(n), d);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        double norm = 0.0;
        while (norm == 0.0) {
            for (Eigen::Index l = 0; l < d; ++l) {
                pts(i, l) = normal(rng);
            }
            norm = pts.row(i).norm();
        }
        pts.row(i) /= norm;
    }
    return Dataset(std::move(pts));
}

LabeledDataset sample_two_moons_labeled(std::size_t n, double noise, std::uint64_t seed)
{
    if (!(noise >= 0.0)) {
        throw InputError("two-moons noise must be non-negative");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t upper = (n + 1) / 2;
    RowMatrix pts(static_cast<Eigen::Index>(n), 2);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = angle(rng);
        const auto r = static_cast<Eigen::Index>(i);
        if (i < upper) {
            pts(r, 0) = std::cos(t);
            pts(r, 1) = std::sin(t);
            labels[i] = 0;
        } else {
            pts(r, 0) = 1.0 - std::cos(t);
            pts(r, 1) = 0.5 - std::sin(t);
            labels[i] = 1;
        }
        if (noise > 0.0) {
            pts(r, 0) += noise * normal(rng);
            pts(r, 1) += noise * normal(rng);
        }
    }
    return {Dataset(std::move(pts)), std::move(labels)};
}

Dataset sample_two_moons(std::size_t n, double noise, std::uint64_t seed)
{
    return sample_two_moons_labeled(n, noise, seed).data;
}

Dataset sample_gaussian(std::size_t n, int d, std::uint64_t seed)
{
    if (d < 1) {
        throw InputError("gaussian sampler needs d >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    RowMatrix pts(static_cast<Eigen::Index>(n), d);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        for (Eigen::Index l = 0; l < d; ++l) {
            pts(i, l) = normal(rng);
        }
    }
    return Dataset(std::move(pts));
}

}  // namespace galerkin
