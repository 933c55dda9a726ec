#include "galerkin/spectral.hpp"

#include "galerkin/errors.hpp"
#include "galerkin/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace galerkin {

SpectralEstimate::SpectralEstimate(Vector values, Matrix left, Matrix right, Dataset landmarks, KernelSpec kernel,
                                   double epsilon)
    : values_(std::move(values)),
      left_(std::move(left)),
      right_(std::move(right)),
      landmarks_(std::move(landmarks)),
      kernel_(kernel),
      epsilon_(epsilon)
{
    const auto t = values_.size();
    const auto p = static_cast<Eigen::Index>(landmarks_.size());
    if (left_.rows() != t || right_.rows() != t || left_.cols() != p || right_.cols() != p) {
        throw InputError("spectral estimate coefficient shapes do not match values/landmarks");
    }
    if (!values_.allFinite()) {
        throw InputError("spectral estimate has non-finite eigenvalues");
    }
    if (!std::is_sorted(values_.data(), values_.data() + values_.size())) {
        throw InputError("spectral estimate eigenvalues must be ascending");
    }
}

double SpectralEstimate::evaluate(std::size_t i, std::span<const double> x) const
{
    if (i >= size()) {
        throw InputError("eigenfunction index " + std::to_string(i) + " out of range (" + std::to_string(size()) +
                         " estimated)");
    }
    if (x.size() != landmarks_.dim()) {
        throw InputError("evaluation point has dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(landmarks_.dim()));
    }
    double f = 0.0;
    for (std::size_t j = 0; j < basis_size(); ++j) {
        f += left_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
             kernel_eval(kernel_, landmarks_.row(j), x);
    }
    return f;
}

Matrix SpectralEstimate::evaluate_all(const Dataset& data) const
{
    return left_ * cross_gram(kernel_, landmarks_, data);
}

std::size_t default_landmark_count(std::size_t n)
{
    auto p = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    // guard against sqrt rounding just above an exact square
    while (p > 1 && (p - 1) * (p - 1) >= n) {
        --p;
    }
    return std::max<std::size_t>(p, 1);
}

double default_epsilon(const Matrix& Psi)
{
    return 1e-8 * Psi.trace() / static_cast<double>(Psi.rows());
}

SpectralEstimate estimate_from_gram(const GramTriplet& gram, const Dataset& landmarks, const KernelSpec& kernel,
                                    std::optional<double> epsilon)
{
    const double eps = epsilon.value_or(default_epsilon(gram.Psi));
    GeneralizedEigen sol = gevd(gram.L, gram.Psi, eps);
    Matrix right = sol.vectors;
    return {std::move(sol.values), std::move(sol.vectors), std::move(right), landmarks, kernel, eps};
}

namespace {

std::vector<std::string> landmark_warnings(const Dataset& landmarks)
{
    std::vector<std::string> out;
    if (landmarks.size() > 1) {
        const auto& pts = landmarks.points();
        if ((pts.rowwise() - pts.row(0)).cwiseAbs().maxCoeff() == 0.0) {
            out.emplace_back("all " + std::to_string(landmarks.size()) + " landmarks are identical");
        }
    }
    return out;
}

}  // namespace

SpectralEstimate decompose(const Dataset& data, const KernelSpec& kernel, const DecomposeOptions& options)
{
    const std::size_t p = options.p.value_or(default_landmark_count(data.size()));
    const std::size_t grid[] = {p};
    return std::move(decompose_nested(data, kernel, grid, options).front());
}

std::vector<SpectralEstimate> decompose_nested(const Dataset& data, const KernelSpec& kernel,
                                               std::span<const std::size_t> p_grid, const DecomposeOptions& options)
{
    kernel.validate();
    if (p_grid.empty()) {
        throw InputError("empty landmark-count grid");
    }
    const std::size_t pmax = *std::max_element(p_grid.begin(), p_grid.end());
    for (std::size_t p : p_grid) {
        if (p < 1 || p > data.size()) {
            throw InputError("landmark count p=" + std::to_string(p) + " must lie in [1, n=" +
                             std::to_string(data.size()) + "]");
        }
    }
    const auto idx = sample_landmark_indices(data.size(), pmax, options.seed);
    const Dataset all_landmarks = data.subset(idx);
    const GramTriplet full = build_gram_laplacian(kernel, all_landmarks, data, options.geometry);

    std::vector<SpectralEstimate> out;
    out.reserve(p_grid.size());
    for (std::size_t p : p_grid) {
        const Dataset landmarks = all_landmarks.head(p);
        SpectralEstimate est = estimate_from_gram(p == pmax ? full : leading_block(full, p), landmarks, kernel,
                                                  options.epsilon);
        est.warnings = landmark_warnings(landmarks);
        out.push_back(std::move(est));
    }
    return out;
}

Matrix empirical_orthogonality(const SpectralEstimate& est, const Dataset& data, std::size_t k)
{
    if (k > est.size()) {
        throw InputError("requested " + std::to_string(k) + " functions but only " + std::to_string(est.size()) +
                         " were estimated");
    }
    const auto kk = static_cast<Eigen::Index>(k);
    const Matrix F = est.left_coeffs().topRows(kk) * cross_gram(est.kernel(), est.landmarks(), data);
    return (F * F.transpose()) / static_cast<double>(data.size());
}

}  // namespace galerkin
