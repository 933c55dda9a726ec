#pragma once

#include "galerkin/dataset.hpp"

namespace galerkin {

/// Solution of L a = lambda (Psi + eps I) a.
///
/// Rows of `vectors` are the coefficient vectors a_i, normalised so that
/// vectors * (Psi + eps I) * vectors^T = I. `values` are ascending.
///
/// Only directions in which Psi + eps I exceeds 2 eps survive the whitening
/// (eigen-directions of Psi larger than eps); the rest are functions that are
/// numerically zero on the data and carry no spectral information. The
/// number of rows t can therefore be smaller than p.
struct GeneralizedEigen {
    Vector values;
    Matrix vectors;  // t x p
};

/// Symmetric-definite generalized eigensolver by eigen-whitening of Psi + eps I.
/// With eps = 0, Psi must be numerically positive definite. Throws SolverError
/// otherwise, or when Psi + eps I has a non-positive eigenvalue.
GeneralizedEigen gevd(const Matrix& L, const Matrix& Psi, double epsilon);

/// A L B^T = diag(values), A (Phi + eps I) A^T = B (Psi + eps I) B^T = I.
/// Values are singular values, descending.
struct GeneralizedSvd {
    Vector values;
    Matrix left;   // A, r x p
    Matrix right;  // B, r x p
};

/// Generalized SVD through the SVD of (Phi + eps I)^{-1/2} L (Psi + eps I)^{-1/2},
/// with pseudo-inverse square roots that drop eigenvalues at or below 2 eps
/// (or at round-off level when eps = 0).
GeneralizedSvd gsvd(const Matrix& L, const Matrix& Phi, const Matrix& Psi, double epsilon);

}  // namespace galerkin
