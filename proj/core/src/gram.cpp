#include "galerkin/gram.hpp"

#include "galerkin/errors.hpp"

#include <cmath>
#include <string>

namespace galerkin {

namespace {

void check_dims(const Dataset& landmarks, const Dataset& data)
{
    if (landmarks.dim() != data.dim()) {
        throw InputError("landmarks have dimension " + std::to_string(landmarks.dim()) + " but data has " +
                         std::to_string(data.dim()));
    }
}

// M M^T through a symmetric rank update, half the flops of a general product.
Matrix outer_gram(const Matrix& m)
{
    Matrix out = Matrix::Zero(m.rows(), m.rows());
    out.selfadjointView<Eigen::Lower>().rankUpdate(m);
    return out.selfadjointView<Eigen::Lower>();
}

// Remove the radial part of every gradient: L <- L - (1/n) R R^T where
// R_ik = <grad k_i(x_k), x_k> / |x_k|.
void project_tangent(Matrix& L, Matrix R, const Vector& data_sq_norms)
{
    const auto n = static_cast<double>(R.cols());
    for (Eigen::Index k = 0; k < R.cols(); ++k) {
        const double nk = std::sqrt(data_sq_norms(k));
        R.col(k) = nk > 0.0 ? Vector(R.col(k) / nk) : Vector::Zero(R.rows());
    }
    L -= outer_gram(R) / n;
}

void symmetrize(Matrix& m)
{
    m = 0.5 * (m + m.transpose()).eval();
}

}  // namespace

Basis nystrom_basis(const KernelSpec& kernel, const Dataset& landmarks)
{
    return {landmarks.size(), [kernel, landmarks](std::size_t i, std::span<const double> x) {
                return kernel_eval(kernel, landmarks.row(i), x);
            }};
}

HFunction laplacian_integrand(const KernelSpec& kernel, const Dataset& landmarks, GradientGeometry geometry)
{
    if (geometry == GradientGeometry::SphereTangent) {
        return [kernel, landmarks](std::size_t i, std::size_t j, std::span<const double> x) {
            return grad_inner_tangent(kernel, landmarks.row(i), landmarks.row(j), x);
        };
    }
    return [kernel, landmarks](std::size_t i, std::size_t j, std::span<const double> x) {
        return grad_inner(kernel, landmarks.row(i), landmarks.row(j), x);
    };
}

GramTriplet build_gram_generic(const HFunction& h, const Basis& phi, const Basis& psi, const Dataset& data)
{
    if (phi.size == 0 || psi.size == 0) {
        throw InputError("basis must contain at least one function");
    }
    const auto p = static_cast<Eigen::Index>(phi.size);
    const auto r = static_cast<Eigen::Index>(psi.size);
    GramTriplet out{Matrix::Zero(p, r), Matrix::Zero(p, p), Matrix::Zero(r, r), data.size()};

    Vector phi_x(p);
    Vector psi_x(r);
    for (std::size_t k = 0; k < data.size(); ++k) {
        const auto x = data.row(k);
        for (Eigen::Index i = 0; i < p; ++i) {
            phi_x(i) = phi.eval(static_cast<std::size_t>(i), x);
        }
        for (Eigen::Index j = 0; j < r; ++j) {
            psi_x(j) = psi.eval(static_cast<std::size_t>(j), x);
        }
        for (Eigen::Index j = 0; j < r; ++j) {
            for (Eigen::Index i = 0; i < p; ++i) {
                const double v = h(static_cast<std::size_t>(i), static_cast<std::size_t>(j), x);
                if (!std::isfinite(v)) {
                    throw AssemblyError("non-finite H value at (i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                                        ", k=" + std::to_string(k) + ")");
                }
                out.L(i, j) += v;
            }
        }
        out.Phi.noalias() += phi_x * phi_x.transpose();
        out.Psi.noalias() += psi_x * psi_x.transpose();
    }
    const auto n = static_cast<double>(data.size());
    out.L /= n;
    out.Phi /= n;
    out.Psi /= n;
    return out;
}

GramTriplet build_gram_laplacian_dot(const KernelSpec& kernel, const Dataset& landmarks, const Dataset& data,
                                     GradientGeometry geometry)
{
    kernel.validate();
    if (!kernel.is_dot_product()) {
        throw ConfigError("build_gram_laplacian_dot needs a dot-product kernel, got " + kernel.label());
    }
    check_dims(landmarks, data);
    const auto n = static_cast<double>(data.size());

    const Matrix X = inner_products(landmarks, data);
    const Matrix G = landmarks.points() * landmarks.points().transpose();
    const Matrix Q = X.unaryExpr([&kernel](double t) { return q_eval(kernel, t); });
    const Matrix QP = X.unaryExpr([&kernel](double t) { return q_prime(kernel, t); });

    GramTriplet out;
    out.n_samples = data.size();
    out.Psi = outer_gram(Q) / n;
    out.L = (outer_gram(QP) / n).cwiseProduct(G);
    if (geometry == GradientGeometry::SphereTangent) {
        project_tangent(out.L, QP.cwiseProduct(X), data.squared_norms());
    }
    symmetrize(out.L);
    symmetrize(out.Psi);
    out.Phi = out.Psi;
    return out;
}

GramTriplet build_gram_laplacian_dist(const KernelSpec& kernel, const Dataset& landmarks, const Dataset& data,
                                      GradientGeometry geometry)
{
    kernel.validate();
    if (kernel.is_dot_product()) {
        throw ConfigError("build_gram_laplacian_dist needs a distance kernel, got " + kernel.label());
    }
    check_dims(landmarks, data);
    const auto n = static_cast<double>(data.size());

    const Matrix X = inner_products(landmarks, data);
    const Matrix G = landmarks.points() * landmarks.points().transpose();
    const Vector D = data.squared_norms();
    const Vector ln = landmarks.squared_norms();

    Matrix Q(X.rows(), X.cols());
    Matrix T(X.rows(), X.cols());
    for (Eigen::Index k = 0; k < X.cols(); ++k) {
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            const double dist = distance_from_products(ln(i), X(i, k), D(k));
            Q(i, k) = q_eval(kernel, dist);
            T(i, k) = q_prime_over_t(kernel, dist);
        }
    }

    // sum_k T_ik T_jk gamma_ij^k with gamma_ij^k = D_k - X_ik - X_jk + G_ij,
    // split into four products so the cost stays O(np^2).
    const Matrix TX = T.cwiseProduct(X);
    const Matrix cross = TX * T.transpose();
    Matrix L = outer_gram(T * D.cwiseSqrt().asDiagonal());
    L -= cross;
    L -= cross.transpose();
    L += G.cwiseProduct(outer_gram(T));
    L /= n;

    GramTriplet out;
    out.n_samples = data.size();
    out.L = std::move(L);
    out.Psi = outer_gram(Q) / n;
    if (geometry == GradientGeometry::SphereTangent) {
        // <grad k_i(x_k), x_k> = T_ik (|x_k|^2 - X_ik)
        Matrix R = T * D.asDiagonal();
        R -= TX;
        project_tangent(out.L, std::move(R), D);
    }
    symmetrize(out.L);
    symmetrize(out.Psi);
    out.Phi = out.Psi;
    return out;
}

GramTriplet build_gram_laplacian(const KernelSpec& kernel, const Dataset& landmarks, const Dataset& data,
                                 GradientGeometry geometry)
{
    if (kernel.is_dot_product()) {
        return build_gram_laplacian_dot(kernel, landmarks, data, geometry);
    }
    return build_gram_laplacian_dist(kernel, landmarks, data, geometry);
}

GramTriplet leading_block(const GramTriplet& gram, std::size_t p)
{
    if (p == 0 || p > gram.basis_size()) {
        throw InputError("leading block size " + std::to_string(p) + " out of range");
    }
    const auto q = static_cast<Eigen::Index>(p);
    return {gram.L.topLeftCorner(q, q), gram.Phi.topLeftCorner(q, q), gram.Psi.topLeftCorner(q, q),
            gram.n_samples};
}

}  // namespace galerkin
