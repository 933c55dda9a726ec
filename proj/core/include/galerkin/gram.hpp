#pragma once

#include "galerkin/dataset.hpp"
#include "galerkin/kernels.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace galerkin {

/// Which gradient enters the Dirichlet energy E[<grad f, grad g>].
enum class GradientGeometry {
    Ambient,        // full Euclidean gradient in R^d
    SphereTangent,  // gradient projected on the tangent space of the sphere through x
};

/// Empirical bilinear forms over a pair of p-dimensional bases, averaged over
/// the n data points: L_ij = mean_k H(i, j, x_k), Phi_ij = mean_k phi_i phi_j,
/// Psi_ij = mean_k psi_i psi_j.
struct GramTriplet {
    Matrix L;
    Matrix Phi;
    Matrix Psi;
    std::size_t n_samples = 0;

    [[nodiscard]] std::size_t basis_size() const { return static_cast<std::size_t>(L.rows()); }
};

/// phi_i(x) for i in [0, size).
struct Basis {
    std::size_t size = 0;
    std::function<double(std::size_t, std::span<const double>)> eval;
};

/// H(i, j, x): the bilinear-form integrand for left basis function i and right
/// basis function j at x. Bilinearity in the underlying functions is the
/// caller's contract.
using HFunction = std::function<double(std::size_t, std::size_t, std::span<const double>)>;

/// Kernel sections k_{landmark_i} as a Basis. Holds a copy of the landmarks.
Basis nystrom_basis(const KernelSpec& kernel, const Dataset& landmarks);

/// H(i, j, x) = <grad k_{landmark_i}(x), grad k_{landmark_j}(x)> in the given geometry.
HFunction laplacian_integrand(const KernelSpec& kernel, const Dataset& landmarks,
                              GradientGeometry geometry = GradientGeometry::Ambient);

/// Direct assembly by looping over (i, j, k). O(n p^2) evaluations of H.
/// Throws AssemblyError naming (i, j, k) on a non-finite H value.
GramTriplet build_gram_generic(const HFunction& h, const Basis& phi, const Basis& psi, const Dataset& data);

/// Dirichlet-energy triplet for a dot-product kernel over Nystrom landmarks,
/// in O(npd + np^2) via the landmark-data inner products.
GramTriplet build_gram_laplacian_dot(const KernelSpec& kernel, const Dataset& landmarks, const Dataset& data,
                                     GradientGeometry geometry = GradientGeometry::Ambient);

/// Dirichlet-energy triplet for a distance kernel over Nystrom landmarks.
GramTriplet build_gram_laplacian_dist(const KernelSpec& kernel, const Dataset& landmarks, const Dataset& data,
                                      GradientGeometry geometry = GradientGeometry::Ambient);

/// Dispatches to the fast path matching the kernel family.
GramTriplet build_gram_laplacian(const KernelSpec& kernel, const Dataset& landmarks, const Dataset& data,
                                 GradientGeometry geometry = GradientGeometry::Ambient);

/// Leading p x p block of every matrix (the triplet for the first p landmarks).
GramTriplet leading_block(const GramTriplet& gram, std::size_t p);

}  // namespace galerkin
