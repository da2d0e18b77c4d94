#pragma once

#include <cstddef>

namespace hodgekit {

/// Every tolerance used by the library, in one place. All norm-relative
/// unless noted. Defaults are the values asserted by the test suite; change
/// them only together with the suite.
struct Tolerances {
    // Matrix hygiene
    double mass_symmetry = 1e-14;       // relative, mass matrices
    double stiffness_symmetry = 1e-12;  // relative, assembled stiffness
    double generic_symmetry = 1e-12;    // relative, cholesky/sym_eig inputs
    double cholesky_pivot = 1e-14;      // pivot <= size * this * max diagonal => fail
    double eig_residual = 1e-10;        // ||Av - lambda v|| <= this * ||A||
    double orthonormal = 1e-12;         // eigenvector orthonormality

    // Operator identities
    double adjointness = 1e-10;         // |<da,b> - <a,delta b>| / (|a||b|)
    double self_adjointness = 1e-10;    // Laplacian symmetry in the mass inner product
    double psd_slack = 1e-12;           // <La,a> >= -psd_slack * <a,a>
    double dd_zero = 1e-12;             // ||d(d a)|| relative
    double operator_consistency = 1e-10; // composed vs assembled Laplacian

    // Kernel / harmonic space
    double kernel_threshold = 1e-8;     // eigenvalue < this * lambda_max => kernel
    double kernel_gap_factor = 10.0;    // retained/discarded separation guard

    // Hodge decomposition
    double hodge_orthogonality = 1e-9;
    double hodge_reconstruction = 1e-9;
    double hodge_uniqueness = 1e-8;
    double lstsq_residual = 1e-11;      // relative CG target for potential solves
    std::size_t lstsq_cap_factor = 10;  // iteration cap = factor * dimension

    // Green operator and spectrum
    double green_residual = 1e-8;       // defining equation
    double green_orthogonality = 1e-9;  // <Ga, e_i> / ||Ga||
    double green_self_adjointness = 1e-9;
    double green_positivity_slack = 1e-12;
    double green_vanishing = 1e-10;     // <Ga,a> below this * |a|^2 <=> harmonic
    double harmonic_closeness = 1e-6;   // ||a - H a|| <= this * |a| counts as harmonic
    double reciprocal_spectra = 1e-8;
    double eigenvalue_grouping = 1e-6;  // relative gap for multiplicity grouping
    double eigen_pair_residual = 1e-8;  // ||L w - lambda w|| <= this * lambda_max * |w|
    double eigen_orthonormal = 1e-9;
    double eigen_nonnegative = 1e-10;   // lambda >= -this * lambda_max
    double mu_variational = 1e-8;
    double expansion_complete = 1e-8;
    double commutation = 1e-8;
    double coercivity = 1e-8;

    // Rank decisions
    double rank_ambiguity_window = 1e3; // singular values within [thr/w, thr*w] are ambiguous

    std::size_t dense_limit = 2000;     // dense eigen/solve paths authoritative up to here
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

} // namespace hodgekit
