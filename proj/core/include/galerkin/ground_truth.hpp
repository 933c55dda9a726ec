#pragma once

#include "galerkin/dataset.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace galerkin {

struct SpectrumBlock {
    double eigenvalue = 0.0;
    std::size_t multiplicity = 0;
};

/// A closed-form spectrum as (eigenvalue, multiplicity) blocks with strictly
/// increasing eigenvalues, and its flattened ascending sequence.
class GroundTruthSpectrum {
public:
    GroundTruthSpectrum() = default;
    explicit GroundTruthSpectrum(std::vector<SpectrumBlock> blocks);

    [[nodiscard]] const std::vector<SpectrumBlock>& blocks() const { return blocks_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double sum(std::size_t k) const;

private:
    std::vector<SpectrumBlock> blocks_;
    std::vector<double> values_;
};

/// Number of degree-s spherical harmonics on S^{d-1}: (2s+d-2)/s * C(s+d-3, s-1).
std::uint64_t harmonic_multiplicity(int d, int s);

/// First k nonzero Laplace-Beltrami eigenvalues s(s+d-2) on the uniform
/// S^{d-1} (s >= 1), flattened with multiplicity; the last block is truncated
/// so that exactly k values are returned.
GroundTruthSpectrum sphere_spectrum(int d, std::size_t k);

/// sum_i |1/lambda_i - v_i| / sum_i 1/lambda_i over the first k values, so the
/// trivial estimate v = 0 scores exactly 1.
double surrogate_error(const GroundTruthSpectrum& truth, std::span<const double> estimated_inverses, std::size_t k);

struct InverseEstimate {
    Vector inverses;    // length k
    bool padded = false;  // fewer than k eigenvalues survived; the tail is 0
};

/// Sorts, drops |lambda| <= zero_tol (constant mode and numerical zeros),
/// clamps negatives up to zero_tol and returns the first k inverses.
/// Default zero_tol is 1e-8 max|lambda|.
InverseEstimate estimate_to_inverses(std::span<const double> values, std::size_t k,
                                     std::optional<double> zero_tol = std::nullopt);

/// The eigenvalues that estimate_to_inverses keeps, ascending.
std::vector<double> nonzero_eigenvalues(std::span<const double> values, std::optional<double> zero_tol = std::nullopt);

/// Uniform samples on the unit sphere S^{d-1}.
Dataset sample_sphere(std::size_t n, int d, std::uint64_t seed);

/// Two interleaved unit half-circles, upper (cos t, sin t) and lower
/// (1 - cos t, 0.5 - sin t), plus isotropic Gaussian noise. The upper moon
/// gets ceil(n/2) points.
Dataset sample_two_moons(std::size_t n, double noise, std::uint64_t seed);

struct LabeledDataset {
    Dataset data;
    std::vector<int> labels;  // 0 = upper moon, 1 = lower moon
};

LabeledDataset sample_two_moons_labeled(std::size_t n, double noise, std::uint64_t seed);

/// i.i.d. standard normal entries.
Dataset sample_gaussian(std::size_t n, int d, std::uint64_t seed);

}  // namespace galerkin
