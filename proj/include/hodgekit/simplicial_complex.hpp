#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace hodgekit {

/// A face of a simplex together with the sign it carries in the boundary.
struct BoundaryEntry {
    int face = -1; // index into simplices[p-1]
    int sign = 0;  // (-1)^i for omission of the i-th vertex
};

/// Finite abstract simplicial complex with canonical orientations.
///
/// Simplices are stored as strictly increasing vertex tuples, each degree's
/// list sorted lexicographically and duplicate-free, so indices are stable
/// identifiers and the boundary signs (-1)^i are independent of how input
/// faces were wound. Fields are public: the struct can be hand-built and
/// then checked with validate().
struct SimplicialComplex {
    int dim = 0;
    /// simplices[p][k] = sorted vertex tuple of the k-th p-simplex, 0 <= p <= dim.
    std::vector<std::vector<std::vector<int>>> simplices;
    /// boundary[p][k] = signed (p-1)-faces of the k-th p-simplex, 1 <= p <= dim.
    /// boundary[0] is empty.
    std::vector<std::vector<std::vector<BoundaryEntry>>> boundary;
    /// Per-vertex coordinates; empty when the complex is purely combinatorial.
    std::vector<Eigen::Vector3d> positions;

    int count(int p) const {
        return (p >= 0 && p <= dim) ? static_cast<int>(simplices[p].size()) : 0;
    }
    bool has_positions() const { return !positions.empty(); }

    bool operator==(const SimplicialComplex& other) const;
};

/// Build the full complex from its top-dimensional cells: every face of every
/// cell is enumerated, deduplicated and indexed, and the signed boundary maps
/// are assembled. Vertices 0..vertex_count-1 are all present as 0-simplices.
/// Cells may be given in any vertex order; windings are discarded.
SimplicialComplex complex_from_cells(int vertex_count,
                                     const std::vector<std::vector<int>>& cells,
                                     std::vector<Eigen::Vector3d> positions = {});

/// Signed incidence of degree p as a dense integer matrix of shape
/// count(p-1) x count(p). Throws InputError when p is outside 1..dim.
Eigen::MatrixXi boundary_matrix(const SimplicialComplex& k, int p);

/// Float copy of boundary_matrix for operator assembly.
Eigen::MatrixXd boundary_matrix_real(const SimplicialComplex& k, int p);

struct Violation {
    std::string kind; // "face absent", "unsorted", "duplicate", "bad incidence", "dd != 0"
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

/// Structural checks: closure under faces, sortedness/dedup, incidence signs,
/// and the integer identity that the boundary of a boundary vanishes.
/// Violations are data, not exceptions.
ValidationReport validate(const SimplicialComplex& k);

} // namespace hodgekit
