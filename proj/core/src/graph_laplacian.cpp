#include "galerkin/graph_laplacian.hpp"

#include "galerkin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace galerkin {

namespace {

void check_size(const Dataset& data, std::size_t max_points)
{
    if (data.size() > max_points) {
        throw ConfigError("graph baseline refuses n=" + std::to_string(data.size()) + " > cap " +
                          std::to_string(max_points) + ": the dense weight matrix needs O(n^2) memory");
    }
}

void normalize(Matrix& W)
{
    const Vector d = W.rowwise().sum().cwiseSqrt().cwiseInverse();
    W = d.asDiagonal() * W * d.asDiagonal();
    W = 0.5 * (W + W.transpose()).eval();
}

Matrix squared_distances(const Dataset& data)
{
    const Vector sq = data.squared_norms();
    Matrix D = -2.0 * (data.points() * data.points().transpose());
    D.colwise() += sq;
    D.rowwise() += sq.transpose();
    return D.cwiseMax(0.0);
}

}  // namespace

GraphWeights weight_matrix(const Dataset& data, double alpha)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw InputError("graph weight scale alpha must be positive and finite");
    }
    if (data.size() < 2) {
        throw InputError("graph weights need at least two points");
    }
    // cut before subnormal range, as for the kernels
    Matrix W = (-alpha * squared_distances(data)).array().exp().unaryExpr([](double w) { return w < 1e-150 ? 0.0 : w; });
    W.diagonal().setOnes();
    normalize(W);
    return {std::move(W), alpha};
}

GraphWeights kernel_weight_matrix(const Dataset& data, const KernelSpec& kernel)
{
    if (data.size() < 2) {
        throw InputError("graph weights need at least two points");
    }
    Matrix W = cross_gram(kernel, data, data);
    W = 0.5 * (W + W.transpose()).eval();
    // (1 + x.y)^s with odd s can dip below zero by round-off at antipodes
    if (W.minCoeff() < -1e-12 * W.cwiseAbs().maxCoeff()) {
        throw InputError("kernel " + kernel.label() + " produces negative graph weights");
    }
    W = W.cwiseMax(0.0);
    if ((W.rowwise().sum().array() <= 0.0).any()) {
        throw InputError("kernel " + kernel.label() + " leaves a point with zero total weight");
    }
    normalize(W);
    return {std::move(W), 0.0};
}

Matrix graph_energy_matrix(const GraphWeights& weights)
{
    Matrix Lg = -2.0 * weights.W;
    Lg.diagonal() += 2.0 * weights.W.rowwise().sum();
    return Lg;
}

SpectralEstimate graph_decompose(const Dataset& data, const KernelSpec& kernel, double alpha,
                                 const GraphOptions& options)
{
    check_size(data, options.max_points);
    const std::size_t p = options.p.value_or(default_landmark_count(data.size()));
    const std::size_t grid[] = {p};
    return std::move(graph_decompose_nested(data, kernel, weight_matrix(data, alpha), grid, options).front());
}

std::vector<SpectralEstimate> graph_decompose_nested(const Dataset& data, const KernelSpec& kernel,
                                                     const GraphWeights& weights,
                                                     std::span<const std::size_t> p_grid,
                                                     const GraphOptions& options)
{
    check_size(data, options.max_points);
    kernel.validate();
    const auto n = static_cast<Eigen::Index>(data.size());
    if (weights.W.rows() != n || weights.W.cols() != n) {
        throw InputError("graph weights do not match the dataset size");
    }
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
    const Matrix Q = cross_gram(kernel, all_landmarks, data);  // E^T, pmax x n
    const Vector degree = weights.W.rowwise().sum();

    // E^T L_g E = 2 (E^T diag(W 1) E - E^T W E), without forming L_g.
    // only lower triangles are formed; W has non-negative entries so the degrees are too
    const Matrix WE = weights.W * Q.transpose();
    Matrix Lproj = Matrix::Zero(Q.rows(), Q.rows());
    Lproj.selfadjointView<Eigen::Lower>().rankUpdate(Q * degree.cwiseSqrt().asDiagonal());
    Lproj.triangularView<Eigen::Lower>() -= Q * WE;
    Lproj = Lproj.selfadjointView<Eigen::Lower>();
    Lproj *= 2.0 / static_cast<double>(n);
    Matrix Psi = Matrix::Zero(Q.rows(), Q.rows());
    Psi.selfadjointView<Eigen::Lower>().rankUpdate(Q, 1.0 / static_cast<double>(n));
    Psi = Psi.selfadjointView<Eigen::Lower>();
    const GramTriplet full{Lproj, Psi, Psi, data.size()};

    std::vector<SpectralEstimate> out;
    out.reserve(p_grid.size());
    for (std::size_t p : p_grid) {
        out.push_back(estimate_from_gram(p == pmax ? full : leading_block(full, p), all_landmarks.head(p), kernel,
                                         options.epsilon));
    }
    return out;
}

Vector rescale_eigenvalues(const Vector& values, double true_sum, std::size_t k)
{
    if (k == 0 || k > static_cast<std::size_t>(values.size())) {
        throw InputError("rescale needs 1 <= k <= number of values");
    }
    const double s = values.head(static_cast<Eigen::Index>(k)).sum();
    if (!(s > 0.0)) {
        throw InputError("cannot rescale: the first k eigenvalues have non-positive sum");
    }
    // divide first so that k = 1 reproduces true_sum exactly
    return (values / s) * true_sum;
}

}  // namespace galerkin
