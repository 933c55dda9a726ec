#pragma once

#include "galerkin/dataset.hpp"
#include "galerkin/kernels.hpp"
#include "galerkin/spectral.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace galerkin {

/// Symmetrically normalised weights W = D^{-1/2} W~ D^{-1/2}, D = diag(row sums of W~).
struct GraphWeights {
    Matrix W;
    double alpha = 0.0;  // scale of exp(-alpha |x_i - x_j|^2); 0 when built from a kernel
};

/// W~_ij = exp(-alpha |x_i - x_j|^2), unit diagonal, then normalised.
GraphWeights weight_matrix(const Dataset& data, double alpha);

/// W~_ij = k_{x_i}(x_j) with the given kernel, then normalised. Entries must be
/// non-negative.
GraphWeights kernel_weight_matrix(const Dataset& data, const KernelSpec& kernel);

/// L_g = 2 (diag(W 1) - W), so that f^T L_g f = sum_ij w_ij (f_i - f_j)^2.
Matrix graph_energy_matrix(const GraphWeights& weights);

struct GraphOptions {
    std::optional<std::size_t> p;   // default ceil(sqrt(n))
    std::optional<double> epsilon;  // default 1e-8 trace(Psi) / p
    std::uint64_t seed = 0;
    std::size_t max_points = 20000;  // dense n x n weights
};

/// Galerkin projection of the graph energy onto Nystrom kernel sections:
/// L = (1/n) E^T L_g E with E_ki = k_{landmark_i}(x_k), solved against the
/// empirical Psi. O(n^2 p + n p^2 + p^3) time, O(n^2) memory.
SpectralEstimate graph_decompose(const Dataset& data, const KernelSpec& kernel, double alpha,
                                 const GraphOptions& options = {});

/// graph_decompose for precomputed weights and a nested landmark-count grid;
/// the n^2 p product is done once at max(p_grid).
std::vector<SpectralEstimate> graph_decompose_nested(const Dataset& data, const KernelSpec& kernel,
                                                     const GraphWeights& weights,
                                                     std::span<const std::size_t> p_grid,
                                                     const GraphOptions& options = {});

/// values * (true_sum / sum of the first k values). Graph-baseline only: the
/// graph energy converges to the Laplacian up to an unknown constant.
Vector rescale_eigenvalues(const Vector& values, double true_sum, std::size_t k);

}  // namespace galerkin
