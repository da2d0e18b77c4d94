#pragma once

#include <string>
#include <vector>

#include "hodgekit/simplicial_complex.hpp"

namespace hodgekit {

/// Single equilateral triangle with side length 1, lying in the z = 0 plane.
SimplicialComplex make_triangle();

/// Cycle graph C_n (a pure 1-complex) on the unit circle. Requires n >= 3.
SimplicialComplex make_cycle(int n);

/// Boundary of the regular octahedron: vertices at the six unit axis points,
/// eight triangular faces.
SimplicialComplex make_octahedron();

/// m x m periodic grid triangulation of the torus of revolution with major
/// radius `major` and minor radius `minor`. Each grid quad is split into two
/// triangles. With `bump` > 0 the minor radius alternates minor +/- bump in a
/// checkerboard pattern and each quad is split along its shorter diagonal;
/// for suitable parameters this makes every triangle acute enough that the
/// circumcentric mass scheme is admissible. With `bump` == 0 the flat grid is
/// produced (fixed diagonal), which is degenerate for that scheme.
SimplicialComplex make_torus_grid(int m, double major, double minor, double bump);

/// 3x3 grid torus carrying a near-flat metric: the three classes of the
/// grid's vertex 3-coloring sit at the corners of an equilateral triangle
/// (every mesh edge joins two classes, so every triangle is near-equilateral)
/// and a small per-row height offset keeps the nine vertices distinct. Well
/// centered, so all mass schemes apply.
SimplicialComplex make_torus_flat3();

/// Bundled named meshes used by tests and the `genmesh` subcommand:
/// "triangle", "c4", "c12", "octahedron", "torus3", "torus8".
/// Throws InputError for an unknown name.
SimplicialComplex make_named_mesh(const std::string& name);

/// Names accepted by make_named_mesh, in stable order.
std::vector<std::string> named_mesh_list();

} // namespace hodgekit
