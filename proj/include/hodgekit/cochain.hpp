#pragma once

#include <string>

#include "hodgekit/linsolve.hpp"
#include "hodgekit/simplicial_complex.hpp"
#include "hodgekit/tolerances.hpp"

namespace hodgekit {

/// Inner-product construction on p-cochains.
///  - combinatorial: identity, so the inner product is the plain dot product.
///  - lumped_barycentric: diagonal with entry = (volume of the barycentric
///    dual cell) / (volume of the simplex).
///  - lumped_circumcentric: diagonal with circumcentric (Voronoi) duals;
///    requires a well-centered mesh of dimension <= 2, every entry must come
///    out positive or the mesh is rejected.
enum class MassScheme { combinatorial, lumped_barycentric, lumped_circumcentric };

/// Accepts "combinatorial", "lumped-barycentric", "lumped-circumcentric" and
/// the short aliases "barycentric", "circumcentric". Throws InputError.
MassScheme mass_scheme_from_string(const std::string& name);
std::string to_string(MassScheme scheme);

/// A real-valued p-cochain: one coefficient per p-simplex, ordered by the
/// simplex index of the complex. Degree -1 and dim+1 cochains are the empty
/// results of delta at the bottom and d at the top.
struct Cochain {
    int degree = 0;
    VectorXd values;
};

/// Degree-p coefficient space with its SPD mass matrix and a ready-made
/// Cholesky factor for applying the inverse.
struct CochainSpace {
    int degree = 0;
    int count = 0;
    MassScheme scheme = MassScheme::combinatorial;
    MatrixXd mass;
    SymmetricFactor mass_factor;

    VectorXd solve_mass(const VectorXd& rhs) const { return mass_factor.solve(rhs); }
};

/// Assemble the degree-p mass matrix under the given scheme.
/// Throws GeometryError for missing positions, degenerate simplices, a
/// non-well-centered mesh under the circumcentric scheme, or dimension 3
/// under the circumcentric scheme.
CochainSpace mass_matrix(const SimplicialComplex& k, int p, MassScheme scheme,
                         const Tolerances& tol = default_tolerances());

/// <a, b> = a^T M_p b. Throws InputError on degree or length mismatch.
double inner(const CochainSpace& space, const Cochain& a, const Cochain& b);

/// p-dimensional volume of simplex `index` (vertex positions required):
/// sqrt(det(Gram)) / p!. Vertices have volume 1.
double simplex_volume(const SimplicialComplex& k, int p, int index);

} // namespace hodgekit
