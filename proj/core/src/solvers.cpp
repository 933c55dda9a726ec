#include "galerkin/solvers.hpp"

#include "galerkin/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

namespace galerkin {

namespace {

void check_square(const Matrix& m, Eigen::Index p, const char* name)
{
    if (m.rows() != p || m.cols() != p) {
        throw InputError(std::string(name) + " must be " + std::to_string(p) + "x" + std::to_string(p));
    }
    if (!m.allFinite()) {
        throw InputError(std::string(name) + " has non-finite entries");
    }
}

// Columns U_i / sqrt(s_i) of the eigen-whitening of M = Psi + eps I, for the
// eigenvalues s_i that clear the keep threshold.
Matrix whitening(const Matrix& Psi, double epsilon, const char* name)
{
    const Eigen::Index p = Psi.rows();
    Matrix M = Psi;
    M.diagonal().array() += epsilon;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(M);
    if (eig.info() != Eigen::Success) {
        throw SolverError(std::string("eigendecomposition of ") + name + " failed");
    }
    const Vector& s = eig.eigenvalues();
    const double smax = s.cwiseAbs().maxCoeff();
    const double roundoff = static_cast<double>(p) * std::numeric_limits<double>::epsilon() * smax;
    if (s.minCoeff() <= (epsilon > 0.0 ? 0.0 : roundoff)) {
        throw SolverError(std::string(name) + " + eps I is not positive definite (min eigenvalue " +
                          std::to_string(s.minCoeff()) + "); use a larger epsilon");
    }
    const double keep_above = epsilon > 0.0 ? 2.0 * epsilon : roundoff;
    // Eigenvalues are ascending, so the kept set is a trailing block.
    Eigen::Index first = 0;
    while (first < p && s(first) <= keep_above) {
        ++first;
    }
    if (first == p) {
        throw SolverError(std::string(name) + " is below the regulariser in every direction; use a smaller epsilon");
    }
    const Eigen::Index r = p - first;
    return eig.eigenvectors().rightCols(r) * s.tail(r).cwiseSqrt().cwiseInverse().asDiagonal();
}

}  // namespace

GeneralizedEigen gevd(const Matrix& L, const Matrix& Psi, double epsilon)
{
    const Eigen::Index p = L.rows();
    if (p == 0) {
        throw InputError("empty matrix pencil");
    }
    check_square(L, p, "L");
    check_square(Psi, p, "Psi");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw InputError("epsilon must be a finite non-negative number");
    }

    const Matrix W = whitening(Psi, epsilon, "Psi");
    Matrix C = W.transpose() * L * W;
    C = 0.5 * (C + C.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(C);
    if (eig.info() != Eigen::Success) {
        throw SolverError("eigendecomposition of the whitened operator failed");
    }
    return {eig.eigenvalues(), (W * eig.eigenvectors()).transpose()};
}

GeneralizedSvd gsvd(const Matrix& L, const Matrix& Phi, const Matrix& Psi, double epsilon)
{
    const Eigen::Index p = L.rows();
    if (p == 0) {
        throw InputError("empty matrix pencil");
    }
    check_square(L, p, "L");
    check_square(Phi, p, "Phi");
    check_square(Psi, p, "Psi");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw InputError("epsilon must be a finite non-negative number");
    }

    const Matrix Wl = whitening(Phi, epsilon, "Phi");
    const Matrix Wr = whitening(Psi, epsilon, "Psi");
    const Matrix K = Wl.transpose() * L * Wr;
    Eigen::JacobiSVD<Matrix> svd(K, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::Index r = svd.singularValues().size();
    return {svd.singularValues(), (Wl * svd.matrixU().leftCols(r)).transpose(),
            (Wr * svd.matrixV().leftCols(r)).transpose()};
}

}  // namespace galerkin
