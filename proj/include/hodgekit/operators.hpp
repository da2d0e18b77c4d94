#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "hodgekit/cochain.hpp"
#include "hodgekit/linsolve.hpp"
#include "hodgekit/simplicial_complex.hpp"
#include "hodgekit/tolerances.hpp"

namespace hodgekit {

/// Assembled d / delta / Laplacian machinery for one complex and one mass
/// scheme. delta is the M-adjoint of d, so <d a, b> = <a, delta b> holds by
/// construction up to round-off. Immutable after construction; safe for
/// concurrent readers (the per-degree eigendecomposition cache is guarded).
class OperatorSet {
public:
    OperatorSet(SimplicialComplex complex, MassScheme scheme,
                Tolerances tol = default_tolerances());

    OperatorSet(const OperatorSet&) = delete;
    OperatorSet& operator=(const OperatorSet&) = delete;

    int dim() const { return complex_.dim; }
    MassScheme scheme() const { return scheme_; }
    const SimplicialComplex& complex() const { return complex_; }
    const Tolerances& tolerances() const { return tol_; }

    /// Number of p-simplices; 0 outside [0, dim].
    int count(int p) const { return p >= 0 && p <= dim() ? complex_.count(p) : 0; }

    const CochainSpace& space(int p) const;

    /// Coboundary D_p mapping degree p to p+1, shape count(p+1) x count(p).
    /// Defined for p in [0, dim-1].
    const MatrixXd& coboundary(int p) const;

    /// Stiffness K_p = D_p^T M_{p+1} D_p + M_p D_{p-1} M_{p-1}^{-1} D_{p-1}^T M_p
    /// with end terms dropped; symmetric PSD. The Laplacian is M_p^{-1} K_p.
    const MatrixXd& stiffness(int p) const;

    Cochain zero(int p) const;

    /// Coboundary application. At the top degree returns the empty cochain of
    /// degree dim+1 (the flag is the out-of-range degree).
    Cochain d(const Cochain& a) const;

    /// Codifferential (M-adjoint of d). At degree 0 returns the empty cochain
    /// of degree -1.
    Cochain delta(const Cochain& a) const;

    /// delta(d a) + d(delta a), composed from the two operators.
    Cochain laplacian(const Cochain& a) const;

    /// Same map through the assembled arrays: M_p^{-1} K_p x.
    VectorXd laplacian_apply(int p, const VectorXd& x) const;

    double inner(int p, const VectorXd& a, const VectorXd& b) const;
    double inner(const Cochain& a, const Cochain& b) const;
    double norm(int p, const VectorXd& a) const;
    double norm(const Cochain& a) const;

    /// Generalized eigendecomposition of the pencil (K_p, M_p): ascending
    /// eigenvalues, M_p-orthonormal vectors. Computed once per degree on
    /// first use; thread-safe.
    const EigenDecomposition& pencil(int p) const;

    /// Testing hook: perturb the degree-p mass matrix after construction
    /// while leaving the cached factorization and assembled arrays untouched.
    /// The resulting internal disagreement must be caught by the property
    /// suite; never call this outside fault-injection tests.
    void corrupt_mass(int p, double amount);

private:
    void check_degree(int p) const;

    SimplicialComplex complex_;
    MassScheme scheme_;
    Tolerances tol_;
    std::vector<CochainSpace> spaces_;
    std::vector<MatrixXd> coboundary_;
    std::vector<MatrixXd> stiffness_;

    struct PencilCache {
        std::once_flag once;
        EigenDecomposition eig;
    };
    mutable std::vector<std::unique_ptr<PencilCache>> pencils_;
};

} // namespace hodgekit
