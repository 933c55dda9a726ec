#pragma once

#include "galerkin/dataset.hpp"

#include <span>
#include <string>

namespace galerkin {

enum class KernelFamily {
    PolynomialDot,    // k_x(y) = (c0 + c1 x.y)^s
    ExponentialDist,  // k_x(y) = exp(-|x-y| / sigma)
    GaussianDist,     // k_x(y) = exp(-|x-y|^2 / (2 sigma^2))
};

/// A kernel k_x(y) = q(x.y) or q(|x-y|) described by its scalar profile q.
struct KernelSpec {
    KernelFamily family = KernelFamily::GaussianDist;
    int degree = 1;       // PolynomialDot only
    double offset = 1.0;  // c0, PolynomialDot only
    double scale = 1.0;   // c1, PolynomialDot only
    double sigma = 1.0;   // distance families only

    static KernelSpec polynomial(int degree, double offset = 1.0, double scale = 1.0);
    static KernelSpec exponential(double sigma);
    static KernelSpec gaussian(double sigma);

    [[nodiscard]] bool is_dot_product() const { return family == KernelFamily::PolynomialDot; }

    /// Throws ConfigError on sigma <= 0 or degree < 1.
    void validate() const;

    /// Short human-readable tag, e.g. "poly(s=3)" or "gauss(sigma=0.1)".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// The profile q(t).
double q_eval(const KernelSpec& kernel, double t);

/// The derivative q'(t).
double q_prime(const KernelSpec& kernel, double t);

/// q'(t)/t for the distance families, the factor that turns q' into a
/// gradient along (x - y). Gaussian uses the closed form -q(t)/sigma^2, which
/// is finite at t = 0. Exponential returns 0 when t < 1e-12: the kernel has
/// a cusp there and the symmetric subgradient is zero.
double q_prime_over_t(const KernelSpec& kernel, double t);

/// |x - y| from |x|^2, x.y and |y|^2. Squared distances within the round-off
/// of the expansion (64 machine epsilons of |x|^2 + |y|^2) are treated as 0, so
/// coincident points give exactly 0 whatever the summation order.
double distance_from_products(double xx, double xy, double yy);

/// k_x(y).
double kernel_eval(const KernelSpec& kernel, std::span<const double> x, std::span<const double> y);

/// Gradient of k_y evaluated at x, written into `out` (size d).
void kernel_gradient(const KernelSpec& kernel, std::span<const double> y, std::span<const double> x,
                     std::span<double> out);

/// <grad k_y(x), grad k_z(x)>, the Dirichlet-energy integrand for two kernel sections.
double grad_inner(const KernelSpec& kernel, std::span<const double> y, std::span<const double> z,
                  std::span<const double> x);

/// <P grad k_y(x), P grad k_z(x)> with P = I - x x^T / |x|^2, the projection onto
/// the tangent space of the sphere through x. Returns grad_inner when x = 0.
double grad_inner_tangent(const KernelSpec& kernel, std::span<const double> y, std::span<const double> z,
                          std::span<const double> x);

/// <grad k_y(x), t>.
double grad_dot(const KernelSpec& kernel, std::span<const double> y, std::span<const double> x,
                std::span<const double> t);

/// Landmark-by-data inner products X_ik = landmark_i . data_k (p x n).
Matrix inner_products(const Dataset& landmarks, const Dataset& data);

/// Landmark-by-data distances N_ik = |landmark_i - data_k| (p x n), through
/// |a|^2 - 2 a.b + |b|^2 with small negatives clamped to zero.
Matrix distances(const Dataset& landmarks, const Dataset& data);

/// Entry (i, k) = k_{landmark_i}(data_k), p x n.
Matrix cross_gram(const KernelSpec& kernel, const Dataset& landmarks, const Dataset& data);

}  // namespace galerkin
