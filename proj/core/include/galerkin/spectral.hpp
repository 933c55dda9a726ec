#pragma once

#include "galerkin/dataset.hpp"
#include "galerkin/gram.hpp"
#include "galerkin/kernels.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace galerkin {

/// Estimated eigenpairs over a Nystrom basis: f_i(x) = sum_j A_ij k_{landmark_j}(x).
class SpectralEstimate {
public:
    SpectralEstimate() = default;
    SpectralEstimate(Vector values, Matrix left, Matrix right, Dataset landmarks, KernelSpec kernel,
                     double epsilon);

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
    [[nodiscard]] std::size_t basis_size() const { return landmarks_.size(); }

    [[nodiscard]] const Vector& values() const { return values_; }
    [[nodiscard]] const Matrix& left_coeffs() const { return left_; }
    [[nodiscard]] const Matrix& right_coeffs() const { return right_; }
    [[nodiscard]] const Dataset& landmarks() const { return landmarks_; }
    [[nodiscard]] const KernelSpec& kernel() const { return kernel_; }
    [[nodiscard]] double epsilon() const { return epsilon_; }

    /// f_i(x). Throws InputError for i >= size() or a dimension mismatch.
    [[nodiscard]] double evaluate(std::size_t i, std::span<const double> x) const;

    /// All t functions at every row of `data`, t x m.
    [[nodiscard]] Matrix evaluate_all(const Dataset& data) const;

    std::vector<std::string> warnings;

private:
    Vector values_;
    Matrix left_;
    Matrix right_;
    Dataset landmarks_;
    KernelSpec kernel_;
    double epsilon_ = 0.0;
};

struct DecomposeOptions {
    std::optional<std::size_t> p;        // default ceil(sqrt(n))
    std::optional<double> epsilon;       // default 1e-8 trace(Psi) / p
    std::uint64_t seed = 0;
    GradientGeometry geometry = GradientGeometry::Ambient;
};

/// ceil(sqrt(n)).
std::size_t default_landmark_count(std::size_t n);

/// 1e-8 trace(Psi) / p.
double default_epsilon(const Matrix& Psi);

/// Nystrom-Galerkin estimate of the Dirichlet-energy spectrum: seeded landmark
/// subsample, fast-path Gram assembly, regularised gevd.
SpectralEstimate decompose(const Dataset& data, const KernelSpec& kernel, const DecomposeOptions& options = {});

/// Same as decompose for every p in `p_grid`, from a single assembly at
/// max(p_grid). Landmarks are nested prefixes of one seeded draw, so the
/// estimate for each p matches decompose() with that p and the same seed up
/// to floating-point round-off in the products.
std::vector<SpectralEstimate> decompose_nested(const Dataset& data, const KernelSpec& kernel,
                                               std::span<const std::size_t> p_grid,
                                               const DecomposeOptions& options = {});

/// Packages a gevd solution over the given landmarks.
SpectralEstimate estimate_from_gram(const GramTriplet& gram, const Dataset& landmarks, const KernelSpec& kernel,
                                    std::optional<double> epsilon);

/// (1/m) sum_x f(x) f(x)^T over `data` for the first k functions.
Matrix empirical_orthogonality(const SpectralEstimate& est, const Dataset& data, std::size_t k);

}  // namespace galerkin
