#include "galerkin/hermite.hpp"

#include "galerkin/errors.hpp"
#include "galerkin/gram.hpp"
#include "galerkin/spectral.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace galerkin {

void HermiteProblem::validate() const
{
    const auto n = static_cast<Eigen::Index>(data.size());
    if (values.size() != n) {
        throw InputError("hermite problem: " + std::to_string(values.size()) + " values for " + std::to_string(n) +
                         " points");
    }
    if (gradients.rows() != n || gradients.cols() != static_cast<Eigen::Index>(data.dim())) {
        throw InputError("hermite problem: gradients must be n x d");
    }
    if (!values.allFinite() || !gradients.allFinite()) {
        throw InputError("hermite problem has non-finite targets");
    }
}

HermiteModel::HermiteModel(Vector alpha, Dataset landmarks, KernelSpec kernel, double epsilon)
    : alpha_(std::move(alpha)), landmarks_(std::move(landmarks)), kernel_(kernel), epsilon_(epsilon)
{
    if (alpha_.size() != static_cast<Eigen::Index>(landmarks_.size())) {
        throw InputError("hermite model: alpha and landmark counts differ");
    }
    if (!alpha_.allFinite()) {
        throw InputError("hermite model: non-finite coefficients");
    }
}

double HermiteModel::predict(std::span<const double> x) const
{
    if (x.size() != landmarks_.dim()) {
        throw InputError("prediction point has dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(landmarks_.dim()));
    }
    double f = 0.0;
    for (std::size_t i = 0; i < landmarks_.size(); ++i) {
        f += alpha_(static_cast<Eigen::Index>(i)) * kernel_eval(kernel_, landmarks_.row(i), x);
    }
    return f;
}

Vector HermiteModel::predict_all(const Dataset& data) const
{
    return cross_gram(kernel_, landmarks_, data).transpose() * alpha_;
}

HermiteSystem ridge_system(const Dataset& data, const Vector& values, const KernelSpec& kernel,
                           const Dataset& landmarks)
{
    if (values.size() != static_cast<Eigen::Index>(data.size())) {
        throw InputError("ridge: one value per data point required");
    }
    const Matrix Q = cross_gram(kernel, landmarks, data);
    Matrix A = Q * Q.transpose();
    A = 0.5 * (A + A.transpose()).eval();
    return {std::move(A), Q * values};
}

HermiteSystem hermite_system(const HermiteProblem& problem, const KernelSpec& kernel, const Dataset& landmarks)
{
    problem.validate();
    const Dataset& data = problem.data;
    const auto n = static_cast<double>(data.size());

    // The Galerkin fast path averages; undo it so A and b share raw-sum scale.
    const GramTriplet gram = build_gram_laplacian(kernel, landmarks, data);
    HermiteSystem sys{n * (gram.L + gram.Psi), Vector()};

    const Matrix X = inner_products(landmarks, data);
    const Matrix YT = landmarks.points() * problem.gradients.transpose();  // landmark_i . t_k
    Matrix Q(X.rows(), X.cols());
    Matrix Tgrad(X.rows(), X.cols());
    if (kernel.is_dot_product()) {
        for (Eigen::Index k = 0; k < X.cols(); ++k) {
            for (Eigen::Index i = 0; i < X.rows(); ++i) {
                Q(i, k) = q_eval(kernel, X(i, k));
                Tgrad(i, k) = q_prime(kernel, X(i, k)) * YT(i, k);
            }
        }
    } else {
        const Vector D = data.squared_norms();
        const Vector ln = landmarks.squared_norms();
        const Vector xt = data.points().cwiseProduct(problem.gradients).rowwise().sum();  // x_k . t_k
        for (Eigen::Index k = 0; k < X.cols(); ++k) {
            for (Eigen::Index i = 0; i < X.rows(); ++i) {
                const double dist = std::sqrt(std::max(ln(i) - 2.0 * X(i, k) + D(k), 0.0));
                Q(i, k) = q_eval(kernel, dist);
                Tgrad(i, k) = q_prime_over_t(kernel, dist) * (xt(k) - YT(i, k));
            }
        }
    }
    sys.b = Q * problem.values + Tgrad.rowwise().sum();
    return sys;
}

Vector solve_system(const HermiteSystem& system, double epsilon)
{
    Matrix A = system.A;
    A.diagonal().array() += epsilon;
    Eigen::LLT<Matrix> llt(A);
    if (llt.info() != Eigen::Success || !(llt.rcond() > 1e-15)) {
        throw SolverError("regression system is singular or indefinite (epsilon=" + std::to_string(epsilon) +
                          "); use a positive epsilon");
    }
    return llt.solve(system.b);
}

namespace {

double default_ridge(const Matrix& A)
{
    return 1e-10 * A.trace() / static_cast<double>(A.rows());
}

Dataset pick_landmarks(const Dataset& data, const HermiteOptions& options)
{
    const std::size_t p = options.p.value_or(default_landmark_count(data.size()));
    if (p < 1 || p > data.size()) {
        throw InputError("landmark count p=" + std::to_string(p) + " must lie in [1, n=" +
                         std::to_string(data.size()) + "]");
    }
    return data.subset(sample_landmark_indices(data.size(), p, options.seed));
}

}  // namespace

HermiteModel hermite_fit(const HermiteProblem& problem, const KernelSpec& kernel, const HermiteOptions& options)
{
    kernel.validate();
    problem.validate();
    Dataset landmarks = pick_landmarks(problem.data, options);
    const HermiteSystem sys = hermite_system(problem, kernel, landmarks);
    const double eps = options.epsilon.value_or(default_ridge(sys.A));
    return {solve_system(sys, eps), std::move(landmarks), kernel, eps};
}

HermiteModel plain_ridge_fit(const Dataset& data, const Vector& values, const KernelSpec& kernel,
                             const HermiteOptions& options)
{
    kernel.validate();
    Dataset landmarks = pick_landmarks(data, options);
    const HermiteSystem sys = ridge_system(data, values, kernel, landmarks);
    const double eps = options.epsilon.value_or(default_ridge(sys.A));
    return {solve_system(sys, eps), std::move(landmarks), kernel, eps};
}

}  // namespace galerkin
