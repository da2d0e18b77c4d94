#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

#include "hodgekit/tolerances.hpp"

namespace hodgekit {

using Eigen::MatrixXd;
using Eigen::MatrixXi;
using Eigen::VectorXd;

/// Lower-triangular Cholesky factor of an SPD matrix. `failed` is set instead
/// of throwing when a pivot drops below the breakdown threshold, so callers
/// can distinguish "not positive definite" from "bad input".
struct SymmetricFactor {
    Eigen::Index size = 0;
    MatrixXd lower;
    bool failed = false;

    /// Solve A x = b through the two triangular systems.
    VectorXd solve(const VectorXd& b) const;
    MatrixXd solve(const MatrixXd& b) const;
    /// L * L^T, for residual checks.
    MatrixXd reconstruct() const;
};

/// Factor a symmetric matrix. Throws InputError if the input is asymmetric
/// beyond tol.generic_symmetry; sets `failed` when a pivot is <=
/// size * tol.cholesky_pivot * max-diagonal.
SymmetricFactor cholesky(const MatrixXd& a, const Tolerances& tol = default_tolerances());

/// Eigenpairs of a symmetric matrix, eigenvalues ascending, eigenvectors
/// orthonormal columns in matching order.
struct EigenDecomposition {
    VectorXd values;
    MatrixXd vectors;
};

/// Dense symmetric eigendecomposition. Deterministic for identical input.
EigenDecomposition sym_eig(const MatrixXd& a, const Tolerances& tol = default_tolerances());

/// Generalized problem A x = lambda B x with B SPD, reduced to an ordinary
/// symmetric problem by Cholesky congruence (B = L L^T, C = L^-1 A L^-T).
/// Returned vectors are B-orthonormal.
EigenDecomposition sym_eig_generalized(const MatrixXd& a, const MatrixXd& b,
                                       const Tolerances& tol = default_tolerances());

/// Exact rank of an integer matrix over the rationals (fraction-free Gaussian
/// elimination on arbitrary-precision integers).
int rank_exact(const MatrixXi& b);

/// Floating-point rank via singular values. `ambiguous` is set when singular
/// values fall inside the decision window around the cutoff, in which case
/// callers should fall back to the exact path.
struct RankEstimate {
    int rank = 0;
    bool ambiguous = false;
};
RankEstimate rank_float(const MatrixXd& b, const Tolerances& tol = default_tolerances());

/// Conjugate gradients on an SPD (or consistent PSD) operator given only its
/// application. Stops at relative residual <= tol_rel or after cap iterations.
struct CgResult {
    VectorXd x;
    double residual = 0.0; // relative to ||b|| (absolute when b = 0)
    std::size_t iterations = 0;
    bool converged = false;
};
CgResult cg_solve(const std::function<VectorXd(const VectorXd&)>& apply, const VectorXd& b,
                  double tol_rel, std::size_t cap);

} // namespace hodgekit
