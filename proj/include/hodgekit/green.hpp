#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hodgekit/hodge.hpp"
#include "hodgekit/operators.hpp"
#include "hodgekit/rng.hpp"

namespace hodgekit {

/// One application of the Green operator: Ga solves
/// laplacian(Ga) = a - H(a) with Ga M-orthogonal to the harmonic subspace.
struct GreenSolve {
    Cochain input;
    Cochain output;
    Cochain harmonic;
    double residual = 0.0; // ||laplacian(Ga) + H(a) - a||_M / ||a||_M
};

/// Apply the Green operator. Dense spectral pseudo-inverse when the degree
/// has at most tol.dense_limit simplices, deflated conjugate gradients above
/// that. Throws NumericalError if the iterative path stalls.
GreenSolve green(const OperatorSet& ops, const HarmonicBasis& basis, const Cochain& a);

/// Nonzero part of the Laplacian spectrum at one degree: ascending
/// eigenvalues with M-orthonormal eigencochains; zero modes are excluded (the
/// harmonic basis carries them) and reported only as harmonic_dim.
struct Spectrum {
    int degree = 0;
    int harmonic_dim = 0;
    VectorXd eigenvalues;
    std::vector<Cochain> modes;
    double grouping = 0.0; // relative gap used to group multiplicities
};

/// First k nonzero eigenpairs of the pencil (K_p, M_p), ascending. Throws
/// InputError when k exceeds count - harmonic_dim.
Spectrum spectrum(const OperatorSet& ops, const HarmonicBasis& basis, int p, int k);

/// Group an ascending eigenvalue list into multiplicity classes: values
/// within rel_gap (relative to the larger) join the open group. Returns
/// (representative value, multiplicity) pairs.
std::vector<std::pair<double, int>> group_eigenvalues(const VectorXd& ascending,
                                                      double rel_gap);

/// M-orthonormal basis of the M-orthogonal complement of span(excluded),
/// grown by projecting coordinate directions (modified Gram-Schmidt in the
/// M inner product). The excluded cochains must themselves be M-orthonormal.
std::vector<VectorXd> complement_basis(const OperatorSet& ops, int p,
                                       const std::vector<Cochain>& excluded);

/// Operator norm of the Green operator restricted to the M-orthogonal
/// complement of (harmonic subspace + first n eigencochains): the largest
/// eigenvalue of the restriction, computed through an explicitly built
/// complement basis, not from the known eigenvalues. Equals 1/lambda_{n+1}.
/// Throws InputError when the complement is empty (n at full dimension).
double mu_variational(const OperatorSet& ops, const HarmonicBasis& basis,
                      const Spectrum& spec, int n);

/// Partial sum of a over the concatenated M-orthonormal basis (harmonic
/// cochains first, then eigencochains ascending) and the M-norm it leaves.
struct Expansion {
    Cochain partial;
    double residual = 0.0;
};

/// n counts terms of the concatenated basis, 0 <= n <= harmonic_dim + modes.
Expansion expand(const OperatorSet& ops, const HarmonicBasis& basis, const Spectrum& spec,
                 const Cochain& a, int n);

/// Residual-vs-bound table across all n for one cochain. The bound is
/// ||laplacian(a)||_M / lambda_{n+1} + 1e-8 ||a||_M over the concatenated
/// eigenvalue list (zeros first), infinite while lambda_{n+1} = 0 and with
/// lambda_{full+1} treated as infinite. Requires a full-mode spectrum.
struct ExpansionRow {
    int n = 0;
    double residual = 0.0;
    double bound = 0.0;
};
std::vector<ExpansionRow> expansion_trace(const OperatorSet& ops, const HarmonicBasis& basis,
                                          const Spectrum& spec, const Cochain& a);

/// Worst relative commutation defects of the Green operator against d, delta
/// and the Laplacian over random samples at every degree of the complex.
struct CommutationReport {
    double worst_d = 0.0;
    double worst_delta = 0.0;
    double worst_laplacian = 0.0;
    int samples = 0;
};
CommutationReport check_commutation(const OperatorSet& ops,
                                    const std::vector<HarmonicBasis>& bases, int samples,
                                    Rng& rng);

/// Sharp discrete constant k = 1/lambda_1 with ||g||_M <= k ||laplacian(g)||_M
/// for every g M-orthogonal to the harmonic subspace. Throws InputError when
/// the spectrum holds no nonzero mode.
double coercivity_constant(const Spectrum& spec);

} // namespace hodgekit
