#pragma once

#include <optional>
#include <vector>

#include "hodgekit/operators.hpp"

namespace hodgekit {

/// M-orthonormal basis of the harmonic subspace at one degree: the kernel of
/// the pencil (K_p, M_p), detected by a relative eigenvalue threshold.
struct HarmonicBasis {
    int degree = 0;
    std::vector<Cochain> basis;
    double threshold = 0.0;

    int dimension() const { return static_cast<int>(basis.size()); }
};

/// Kernel of (K_p, M_p): generalized eigenvectors with eigenvalue below
/// threshold * lambda_max. Throws KernelAmbiguityError when the smallest
/// retained nonzero eigenvalue is within a factor 10 of the largest one
/// discarded (no clear spectral gap).
HarmonicBasis harmonic_basis(const OperatorSet& ops, int p, double threshold);
HarmonicBasis harmonic_basis(const OperatorSet& ops, int p);

/// Orthogonal projection onto the harmonic subspace: sum_i <a, e_i> e_i.
Cochain project_harmonic(const OperatorSet& ops, const HarmonicBasis& basis,
                         const Cochain& a);

/// Three-way orthogonal split a = exact + coexact + harmonic, with the
/// potentials that certify the exact and coexact memberships (beta with
/// d beta = exact, gamma with delta gamma = coexact).
struct HodgeSplit {
    Cochain exact;
    Cochain coexact;
    Cochain harmonic;
    std::optional<Cochain> exact_potential;
    std::optional<Cochain> coexact_potential;
    double residual = 0.0;      // reconstruction, relative
    double orthogonality = 0.0; // worst pairwise inner product, relative
};

/// Decompose a: harmonic part by projection, exact part d(beta) with beta the
/// least-squares potential (conjugate gradients on the M-normal equations),
/// coexact part by subtraction with its own potential solved for as an
/// a-posteriori certificate. Throws NumericalError when a potential solve
/// stalls above its residual target.
HodgeSplit decompose(const OperatorSet& ops, const HarmonicBasis& basis, const Cochain& a);

/// p-th Betti number by rank-nullity on the integer boundary matrices:
/// count(p) - rank B_p - rank B_{p+1}. Float rank with an exact
/// integer-elimination fallback when the singular values are ambiguous.
/// Independent of any mass scheme.
int betti(const SimplicialComplex& k, int p, const Tolerances& tol = default_tolerances());

} // namespace hodgekit
