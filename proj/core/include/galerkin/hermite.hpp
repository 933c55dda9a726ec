#pragma once

#include "galerkin/dataset.hpp"
#include "galerkin/kernels.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace galerkin {

/// Values y_k and gradients t_k to match at every data point x_k.
struct HermiteProblem {
    Dataset data;
    Vector values;       // n
    RowMatrix gradients;  // n x d

    /// Throws InputError on shape mismatch or non-finite entries.
    void validate() const;
};

/// f(x) = sum_i alpha_i k_{landmark_i}(x).
class HermiteModel {
public:
    HermiteModel() = default;
    HermiteModel(Vector alpha, Dataset landmarks, KernelSpec kernel, double epsilon);

    [[nodiscard]] const Vector& alpha() const { return alpha_; }
    [[nodiscard]] const Dataset& landmarks() const { return landmarks_; }
    [[nodiscard]] const KernelSpec& kernel() const { return kernel_; }
    [[nodiscard]] double epsilon() const { return epsilon_; }

    [[nodiscard]] double predict(std::span<const double> x) const;
    [[nodiscard]] Vector predict_all(const Dataset& data) const;

private:
    Vector alpha_;
    Dataset landmarks_;
    KernelSpec kernel_;
    double epsilon_ = 0.0;
};

/// Normal equations alpha^T A alpha - 2 b^T alpha of the least-squares fit,
/// as raw sums over the data (no 1/n).
struct HermiteSystem {
    Matrix A;  // p x p
    Vector b;  // p
};

/// A = sum_k phi phi^T + grad phi grad phi^T, b = sum_k phi y_k + grad phi . t_k,
/// assembled through the structured kernel identities in O(np^2 + npd).
HermiteSystem hermite_system(const HermiteProblem& problem, const KernelSpec& kernel, const Dataset& landmarks);

/// Values-only system: A = sum_k phi phi^T, b = sum_k phi y_k.
HermiteSystem ridge_system(const Dataset& data, const Vector& values, const KernelSpec& kernel,
                           const Dataset& landmarks);

struct HermiteOptions {
    std::optional<std::size_t> p;   // default ceil(sqrt(n))
    std::optional<double> epsilon;  // default 1e-10 trace(A) / p
    std::uint64_t seed = 0;
};

/// alpha = (A + eps I)^{-1} b. Throws SolverError when the system is singular.
Vector solve_system(const HermiteSystem& system, double epsilon);

/// Least-squares fit to values and gradients over a seeded Nystrom basis.
HermiteModel hermite_fit(const HermiteProblem& problem, const KernelSpec& kernel, const HermiteOptions& options = {});

/// Kernel ridge baseline fitted to values only, same basis and ridge rule.
HermiteModel plain_ridge_fit(const Dataset& data, const Vector& values, const KernelSpec& kernel,
                             const HermiteOptions& options = {});

}  // namespace galerkin
