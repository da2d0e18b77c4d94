#include "hodgekit/cochain.hpp"

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

MassScheme mass_scheme_from_string(const std::string& name) {
    if (name == "combinatorial") return MassScheme::combinatorial;
    if (name == "lumped-barycentric" || name == "barycentric")
        return MassScheme::lumped_barycentric;
    if (name == "lumped-circumcentric" || name == "circumcentric")
        return MassScheme::lumped_circumcentric;
    throw InputError("unknown mass scheme: " + name);
}

std::string to_string(MassScheme scheme) {
    switch (scheme) {
        case MassScheme::combinatorial: return "combinatorial";
        case MassScheme::lumped_barycentric: return "lumped-barycentric";
        case MassScheme::lumped_circumcentric: return "lumped-circumcentric";
    }
    throw InputError("invalid mass scheme value");
}

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Volume of the simplex spanned by pts (k+1 points span a k-simplex):
/// sqrt(det Gram)/k!. A single point has volume 1 by convention.
double hull_volume(const std::vector<Eigen::Vector3d>& pts) {
    const int k = static_cast<int>(pts.size()) - 1;
    if (k <= 0) return 1.0;
    MatrixXd edges(3, k);
    for (int i = 1; i <= k; ++i) edges.col(i - 1) = pts[static_cast<std::size_t>(i)] - pts[0];
    double det = (edges.transpose() * edges).determinant();
    if (det < 0.0) det = 0.0;
    return std::sqrt(det) / factorial(k);
}

Eigen::Vector3d barycenter(const SimplicialComplex& k, int p, int index) {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    const auto& verts = k.simplices[p][static_cast<std::size_t>(index)];
    for (int v : verts) c += k.positions[static_cast<std::size_t>(v)];
    return c / static_cast<double>(verts.size());
}

void require_nondegenerate(const SimplicialComplex& k, int q) {
    if (q == 0) return;
    double vmax = 0.0;
    const int count = k.count(q);
    std::vector<double> vols(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        vols[static_cast<std::size_t>(i)] = simplex_volume(k, q, i);
        vmax = std::max(vmax, vols[static_cast<std::size_t>(i)]);
    }
    if (count > 0 && vmax <= 0.0)
        throw GeometryError("all " + std::to_string(q) + "-simplices are degenerate");
    for (int i = 0; i < count; ++i)
        if (vols[static_cast<std::size_t>(i)] <= 1e-12 * vmax)
            throw GeometryError("degenerate " + std::to_string(q) + "-simplex " +
                                std::to_string(i));
}

/// Coface lists: cofaces[q][i] = indices of (q+1)-simplices having (q,i) as a
/// face. Built for q in [p, n-1].
std::vector<std::vector<std::vector<int>>> coface_lists(const SimplicialComplex& k, int p) {
    const int n = k.dim;
    std::vector<std::vector<std::vector<int>>> cofaces(static_cast<std::size_t>(n));
    for (int q = p; q < n; ++q)
        cofaces[static_cast<std::size_t>(q)].resize(static_cast<std::size_t>(k.count(q)));
    for (int q = p + 1; q <= n; ++q)
        for (int j = 0; j < k.count(q); ++j)
            for (const auto& e : k.boundary[q][static_cast<std::size_t>(j)])
                cofaces[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(e.face)]
                    .push_back(j);
    return cofaces;
}

/// Barycentric dual volume of (p, index): sum over flags
/// sigma_p < sigma_{p+1} < ... < sigma_n of the volume of the simplex spanned
/// by the flag's barycenters.
double barycentric_dual_volume(const SimplicialComplex& k, int p, int index,
                               const std::vector<std::vector<std::vector<int>>>& cofaces) {
    const int n = k.dim;
    std::vector<Eigen::Vector3d> chain = {barycenter(k, p, index)};
    double total = 0.0;
    // Explicit DFS over cofaces carrying the barycenter chain.
    struct Frame {
        int q;
        int i;
        std::size_t next = 0;
    };
    std::vector<Frame> stack = {{p, index, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.q == n) {
            total += hull_volume(chain);
            stack.pop_back();
            chain.pop_back();
            continue;
        }
        const auto& up = cofaces[static_cast<std::size_t>(f.q)][static_cast<std::size_t>(f.i)];
        if (f.next == up.size()) {
            stack.pop_back();
            chain.pop_back();
            continue;
        }
        int j = up[f.next++];
        chain.push_back(barycenter(k, f.q + 1, j));
        stack.push_back({f.q + 1, j, 0});
    }
    return total;
}

VectorXd barycentric_diagonal(const SimplicialComplex& k, int p) {
    require_nondegenerate(k, p);
    require_nondegenerate(k, k.dim);
    const auto cofaces = coface_lists(k, p);
    const int count = k.count(p);
    VectorXd diag(count);
    for (int i = 0; i < count; ++i) {
        double dual = barycentric_dual_volume(k, p, i, cofaces);
        double primal = simplex_volume(k, p, i);
        diag(i) = dual / primal;
        if (!(diag(i) > 0.0) || !std::isfinite(diag(i)))
            throw GeometryError("nonpositive dual volume for " + std::to_string(p) +
                                "-simplex " + std::to_string(i) +
                                " (isolated or degenerate)");
    }
    return diag;
}

VectorXd circumcentric_diagonal(const SimplicialComplex& k, int p) {
    const int n = k.dim;
    if (n >= 3)
        throw GeometryError("circumcentric masses support complexes of dimension <= 2");
    // In dimension <= 1 circumcenters coincide with barycenters.
    if (n <= 1) return barycentric_diagonal(k, p);

    require_nondegenerate(k, p);
    require_nondegenerate(k, 2);

    if (p == 2) {
        VectorXd diag(k.count(2));
        for (int i = 0; i < k.count(2); ++i) diag(i) = 1.0 / simplex_volume(k, 2, i);
        return diag;
    }

    std::map<std::pair<int, int>, int> edge_index;
    for (int e = 0; e < k.count(1); ++e) {
        const auto& ev = k.simplices[1][static_cast<std::size_t>(e)];
        edge_index[{ev[0], ev[1]}] = e;
    }

    // Cotan accumulation: each triangle corner with angle theta contributes
    // cot(theta)/2 to the opposite edge's weight and |opposite|^2 cot(theta)/8
    // to the Voronoi areas of the two vertices on that edge.
    VectorXd edge_weight = VectorXd::Zero(k.count(1));
    VectorXd voronoi = VectorXd::Zero(k.count(0));
    for (const auto& tri : k.simplices[2]) {
        for (int c = 0; c < 3; ++c) {
            int a = tri[static_cast<std::size_t>(c)];
            int b = tri[static_cast<std::size_t>((c + 1) % 3)];
            int d = tri[static_cast<std::size_t>((c + 2) % 3)];
            Eigen::Vector3d u = k.positions[static_cast<std::size_t>(b)] -
                                k.positions[static_cast<std::size_t>(a)];
            Eigen::Vector3d v = k.positions[static_cast<std::size_t>(d)] -
                                k.positions[static_cast<std::size_t>(a)];
            double sin_area = u.cross(v).norm();
            if (sin_area <= 0.0)
                throw GeometryError("degenerate triangle corner at vertex " +
                                    std::to_string(a));
            double cot = u.dot(v) / sin_area;
            int lo = std::min(b, d), hi = std::max(b, d);
            edge_weight(edge_index.at({lo, hi})) += 0.5 * cot;
            double l2 = (k.positions[static_cast<std::size_t>(b)] -
                         k.positions[static_cast<std::size_t>(d)])
                            .squaredNorm();
            voronoi(b) += l2 * cot / 8.0;
            voronoi(d) += l2 * cot / 8.0;
        }
    }

    if (p == 1) {
        for (int e = 0; e < k.count(1); ++e)
            if (!(edge_weight(e) > 0.0))
                throw GeometryError(
                    "mesh is not well-centered: nonpositive circumcentric dual for edge " +
                    std::to_string(e));
        return edge_weight;
    }

    for (int v = 0; v < k.count(0); ++v)
        if (!(voronoi(v) > 0.0))
            throw GeometryError(
                "mesh is not well-centered: nonpositive Voronoi area at vertex " +
                std::to_string(v));
    return voronoi;
}

} // namespace

double simplex_volume(const SimplicialComplex& k, int p, int index) {
    if (p == 0) return 1.0;
    if (!k.has_positions()) throw GeometryError("simplex volume requires vertex positions");
    const auto& verts = k.simplices[p][static_cast<std::size_t>(index)];
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(verts.size());
    for (int v : verts) pts.push_back(k.positions[static_cast<std::size_t>(v)]);
    return hull_volume(pts);
}

CochainSpace mass_matrix(const SimplicialComplex& k, int p, MassScheme scheme,
                         const Tolerances& tol) {
    if (p < 0 || p > k.dim) throw InputError("degree out of range for this complex");

    CochainSpace space;
    space.degree = p;
    space.count = k.count(p);
    space.scheme = scheme;

    if (scheme == MassScheme::combinatorial) {
        space.mass = MatrixXd::Identity(space.count, space.count);
    } else {
        if (!k.has_positions())
            throw GeometryError("geometric mass schemes require vertex positions");
        VectorXd diag = scheme == MassScheme::lumped_barycentric
                            ? barycentric_diagonal(k, p)
                            : circumcentric_diagonal(k, p);
        space.mass = diag.asDiagonal();
    }

    space.mass_factor = cholesky(space.mass, tol);
    if (space.mass_factor.failed)
        throw NumericalError("mass matrix is not positive definite at degree " +
                             std::to_string(p));
    return space;
}

double inner(const CochainSpace& space, const Cochain& a, const Cochain& b) {
    if (a.degree != space.degree || b.degree != space.degree)
        throw InputError("cochain degree does not match the space");
    if (a.values.size() != space.count || b.values.size() != space.count)
        throw InputError("cochain length does not match the space");
    return a.values.dot(space.mass * b.values);
}

} // namespace hodgekit
