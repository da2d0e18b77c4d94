#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hodgekit/cochain.hpp"
#include "hodgekit/exceptions.hpp"
#include "hodgekit/generators.hpp"
#include "hodgekit/operators.hpp"
#include "hodgekit/rng.hpp"

using namespace hodgekit;

namespace {

const double kSqrt3 = std::sqrt(3.0);

SimplicialComplex make_tetrahedron() {
    std::vector<Eigen::Vector3d> pos = {
        {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
    };
    return complex_from_cells(4, {{0, 1, 2, 3}}, std::move(pos));
}

Cochain cochain(int degree, std::initializer_list<double> values) {
    Cochain c;
    c.degree = degree;
    c.values = VectorXd(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) c.values(i++) = v;
    return c;
}

} // namespace

TEST_CASE("mass scheme names and aliases") {
    CHECK(mass_scheme_from_string("combinatorial") == MassScheme::combinatorial);
    CHECK(mass_scheme_from_string("lumped-barycentric") == MassScheme::lumped_barycentric);
    CHECK(mass_scheme_from_string("barycentric") == MassScheme::lumped_barycentric);
    CHECK(mass_scheme_from_string("lumped-circumcentric") == MassScheme::lumped_circumcentric);
    CHECK(mass_scheme_from_string("circumcentric") == MassScheme::lumped_circumcentric);
    CHECK_THROWS_AS(mass_scheme_from_string("voronoi"), InputError);
    CHECK(to_string(MassScheme::lumped_barycentric) == "lumped-barycentric");
    CHECK(mass_scheme_from_string(to_string(MassScheme::lumped_circumcentric)) ==
          MassScheme::lumped_circumcentric);
}

TEST_CASE("combinatorial mass is the identity") {
    SimplicialComplex oct = make_octahedron();
    for (int p = 0; p <= 2; ++p) {
        CochainSpace space = mass_matrix(oct, p, MassScheme::combinatorial);
        CHECK(space.count == oct.count(p));
        CHECK((space.mass - MatrixXd::Identity(space.count, space.count)).norm() == 0.0);
    }
}

TEST_CASE("barycentric masses on the unit equilateral triangle") {
    SimplicialComplex tri = make_triangle();
    const double area = kSqrt3 / 4.0;

    CochainSpace m0 = mass_matrix(tri, 0, MassScheme::lumped_barycentric);
    for (int v = 0; v < 3; ++v)
        CHECK(m0.mass(v, v) == doctest::Approx(area / 3.0).epsilon(1e-13));

    CochainSpace m1 = mass_matrix(tri, 1, MassScheme::lumped_barycentric);
    for (int e = 0; e < 3; ++e)
        CHECK(m1.mass(e, e) == doctest::Approx(kSqrt3 / 6.0).epsilon(1e-13));

    CochainSpace m2 = mass_matrix(tri, 2, MassScheme::lumped_barycentric);
    CHECK(m2.mass(0, 0) == doctest::Approx(4.0 / kSqrt3).epsilon(1e-13));
    CHECK(m2.mass(0, 0) == doctest::Approx(1.0 / area).epsilon(1e-13));
}

TEST_CASE("circumcentric equals barycentric on equilateral geometry") {
    SimplicialComplex tri = make_triangle();
    for (int p = 0; p <= 2; ++p) {
        CochainSpace bary = mass_matrix(tri, p, MassScheme::lumped_barycentric);
        CochainSpace circ = mass_matrix(tri, p, MassScheme::lumped_circumcentric);
        CHECK((bary.mass - circ.mass).norm() <= 1e-13 * bary.mass.norm());
    }
}

TEST_CASE("circumcentric routes through barycentric below dimension 2") {
    SimplicialComplex c4 = make_cycle(4);
    for (int p = 0; p <= 1; ++p) {
        CochainSpace bary = mass_matrix(c4, p, MassScheme::lumped_barycentric);
        CochainSpace circ = mass_matrix(c4, p, MassScheme::lumped_circumcentric);
        CHECK((bary.mass - circ.mass).norm() == 0.0);
    }
}

TEST_CASE("vertex dual areas partition the surface") {
    SimplicialComplex oct = make_octahedron();
    double total_area = 0.0;
    for (int t = 0; t < oct.count(2); ++t) total_area += simplex_volume(oct, 2, t);
    CHECK(total_area == doctest::Approx(4.0 * kSqrt3).epsilon(1e-13));

    for (MassScheme scheme :
         {MassScheme::lumped_barycentric, MassScheme::lumped_circumcentric}) {
        CochainSpace m0 = mass_matrix(oct, 0, scheme);
        CHECK(m0.mass.diagonal().sum() == doctest::Approx(total_area).epsilon(1e-12));
    }
}

TEST_CASE("lumped masses are diagonal, positive, and factorizable") {
    SimplicialComplex t8 = make_named_mesh("torus8");
    for (MassScheme scheme :
         {MassScheme::lumped_barycentric, MassScheme::lumped_circumcentric}) {
        for (int p = 0; p <= 2; ++p) {
            CochainSpace space = mass_matrix(t8, p, scheme);
            MatrixXd off = space.mass - MatrixXd(space.mass.diagonal().asDiagonal());
            CHECK(off.norm() == 0.0);
            CHECK(space.mass.diagonal().minCoeff() > 0.0);
            CHECK_FALSE(space.mass_factor.failed);
            VectorXd rhs = VectorXd::Ones(space.count);
            CHECK((space.mass * space.solve_mass(rhs) - rhs).norm() <= 1e-12);
        }
    }
}

TEST_CASE("geometric schemes reject missing positions") {
    SimplicialComplex bare = complex_from_cells(3, {{0, 1, 2}});
    CHECK_THROWS_AS(mass_matrix(bare, 0, MassScheme::lumped_barycentric), GeometryError);
    CHECK_THROWS_AS(mass_matrix(bare, 1, MassScheme::lumped_circumcentric), GeometryError);
    CHECK_NOTHROW(mass_matrix(bare, 0, MassScheme::combinatorial));
}

TEST_CASE("degenerate simplices are rejected") {
    std::vector<Eigen::Vector3d> collinear = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
    SimplicialComplex flat = complex_from_cells(3, {{0, 1, 2}}, collinear);
    CHECK_THROWS_AS(mass_matrix(flat, 0, MassScheme::lumped_barycentric), GeometryError);
    CHECK_THROWS_AS(mass_matrix(flat, 2, MassScheme::lumped_circumcentric), GeometryError);
}

TEST_CASE("circumcentric scheme rejects non-well-centered meshes") {
    std::vector<Eigen::Vector3d> pos = {{0, 0, 0}, {4, 0, 0}, {2, 0.5, 0}};
    SimplicialComplex obtuse = complex_from_cells(3, {{0, 1, 2}}, pos);
    CHECK_THROWS_AS(mass_matrix(obtuse, 0, MassScheme::lumped_circumcentric), GeometryError);
    CHECK_THROWS_AS(mass_matrix(obtuse, 1, MassScheme::lumped_circumcentric), GeometryError);
    // The same mesh is fine under barycentric duals.
    CHECK_NOTHROW(mass_matrix(obtuse, 1, MassScheme::lumped_barycentric));

    SimplicialComplex sliver_torus = make_torus_grid(3, 2.0, 1.0, 0.0);
    CHECK_THROWS_AS(mass_matrix(sliver_torus, 0, MassScheme::lumped_circumcentric),
                    GeometryError);
    CHECK_THROWS_AS(mass_matrix(sliver_torus, 1, MassScheme::lumped_circumcentric),
                    GeometryError);
}

TEST_CASE("circumcentric scheme rejects dimension 3") {
    SimplicialComplex tet = make_tetrahedron();
    CHECK_THROWS_AS(mass_matrix(tet, 0, MassScheme::lumped_circumcentric), GeometryError);
    CHECK_NOTHROW(mass_matrix(tet, 1, MassScheme::lumped_barycentric));
}

TEST_CASE("mass_matrix rejects out-of-range degrees") {
    SimplicialComplex tri = make_triangle();
    CHECK_THROWS_AS(mass_matrix(tri, -1, MassScheme::combinatorial), InputError);
    CHECK_THROWS_AS(mass_matrix(tri, 3, MassScheme::combinatorial), InputError);
}

TEST_CASE("inner products") {
    SimplicialComplex edge = complex_from_cells(2, {{0, 1}});
    CochainSpace space = mass_matrix(edge, 0, MassScheme::combinatorial);
    CHECK(inner(space, cochain(0, {1, 2}), cochain(0, {3, 4})) == 11.0);
    CHECK(inner(space, cochain(0, {0, 0}), cochain(0, {0, 0})) == 0.0);

    CochainSpace weighted;
    weighted.degree = 0;
    weighted.count = 2;
    weighted.mass = MatrixXd::Zero(2, 2);
    weighted.mass(0, 0) = 2.0;
    weighted.mass(1, 1) = 0.5;
    weighted.mass_factor = cholesky(weighted.mass);
    CHECK(inner(weighted, cochain(0, {1, 1}), cochain(0, {1, 1})) == 2.5);

    CHECK_THROWS_AS(inner(space, cochain(1, {1, 2}), cochain(0, {3, 4})), InputError);
    CHECK_THROWS_AS(inner(space, cochain(0, {1, 2, 3}), cochain(0, {3, 4})), InputError);
}

TEST_CASE("simplex volumes") {
    SimplicialComplex tri = make_triangle();
    CHECK(simplex_volume(tri, 0, 0) == 1.0);
    CHECK(simplex_volume(tri, 1, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(simplex_volume(tri, 2, 0) == doctest::Approx(kSqrt3 / 4.0).epsilon(1e-14));

    SimplicialComplex bare = complex_from_cells(3, {{0, 1, 2}});
    CHECK_THROWS_AS(simplex_volume(bare, 1, 0), GeometryError);
}

TEST_CASE("coboundary of a 0-cochain differences endpoint values") {
    OperatorSet ops(make_triangle(), MassScheme::combinatorial);
    // Edges in index order: (0,1), (0,2), (1,2).
    Cochain f = cochain(0, {3, 5, 9});
    Cochain df = ops.d(f);
    CHECK(df.degree == 1);
    CHECK(df.values(0) == 2.0);
    CHECK(df.values(1) == 6.0);
    CHECK(df.values(2) == 4.0);

    Cochain constant = cochain(0, {7, 7, 7});
    CHECK(ops.d(constant).values.norm() == 0.0);
}

TEST_CASE("coboundary squared vanishes") {
    OperatorSet ops(make_octahedron(), MassScheme::lumped_barycentric);
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Cochain a;
        a.degree = 0;
        a.values = rng.vector(ops.count(0));
        Cochain dda = ops.d(ops.d(a));
        CHECK(dda.values.norm() <= 1e-12 * a.values.norm());
    }
}

TEST_CASE("top and bottom degrees return empty flagged cochains") {
    OperatorSet ops(make_octahedron(), MassScheme::combinatorial);
    Cochain top = ops.zero(2);
    Cochain up = ops.d(top);
    CHECK(up.degree == 3);
    CHECK(up.values.size() == 0);

    Cochain bottom = ops.zero(0);
    Cochain down = ops.delta(bottom);
    CHECK(down.degree == -1);
    CHECK(down.values.size() == 0);
}

TEST_CASE("codifferential on a single combinatorial edge is the transpose") {
    OperatorSet ops(complex_from_cells(2, {{0, 1}}), MassScheme::combinatorial);
    Cochain beta = cochain(1, {1});
    Cochain db = ops.delta(beta);
    CHECK(db.degree == 0);
    CHECK(db.values(0) == -1.0);
    CHECK(db.values(1) == 1.0);
}

TEST_CASE("codifferential of the coboundary of a constant vanishes") {
    OperatorSet ops(make_octahedron(), MassScheme::lumped_circumcentric);
    Cochain constant = ops.zero(0);
    constant.values.setOnes();
    Cochain back = ops.delta(ops.d(constant));
    CHECK(back.values.norm() <= 1e-12);
}

TEST_CASE("adjointness of d and delta") {
    Rng rng(5);
    for (MassScheme scheme : {MassScheme::combinatorial, MassScheme::lumped_barycentric,
                              MassScheme::lumped_circumcentric}) {
        OperatorSet ops(make_octahedron(), scheme);
        for (int p = 0; p < 2; ++p) {
            for (int trial = 0; trial < 20; ++trial) {
                Cochain a;
                a.degree = p;
                a.values = rng.vector(ops.count(p));
                Cochain b;
                b.degree = p + 1;
                b.values = rng.vector(ops.count(p + 1));
                double lhs = ops.inner(ops.d(a), b);
                double rhs = ops.inner(a, ops.delta(b));
                CHECK(std::abs(lhs - rhs) <=
                      1e-10 * a.values.norm() * b.values.norm());
            }
        }
    }
}

TEST_CASE("graph Laplacian action on the triangle") {
    OperatorSet ops(make_triangle(), MassScheme::combinatorial);
    Cochain a = cochain(0, {1, 0, 0});
    Cochain la = ops.laplacian(a);
    CHECK(la.values(0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(la.values(1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(la.values(2) == doctest::Approx(-1.0).epsilon(1e-14));

    Cochain constant = cochain(0, {4, 4, 4});
    CHECK(ops.laplacian(constant).values.norm() <= 1e-13);
}

TEST_CASE("composed Laplacian matches the assembled stiffness route") {
    Rng rng(17);
    OperatorSet ops(make_named_mesh("torus3"), MassScheme::lumped_barycentric);
    for (int p = 0; p <= 2; ++p) {
        Cochain a;
        a.degree = p;
        a.values = rng.vector(ops.count(p));
        VectorXd composed = ops.laplacian(a).values;
        VectorXd assembled = ops.laplacian_apply(p, a.values);
        CHECK((composed - assembled).norm() <=
              1e-10 * (composed.norm() + assembled.norm() + 1.0));
    }
}

TEST_CASE("stiffness matrices are symmetric with nonnegative pencil spectra") {
    OperatorSet ops(make_octahedron(), MassScheme::lumped_circumcentric);
    for (int p = 0; p <= 2; ++p) {
        const MatrixXd& k = ops.stiffness(p);
        CHECK((k - k.transpose()).norm() <= 1e-12 * (1.0 + k.norm()));
        const EigenDecomposition& eig = ops.pencil(p);
        CHECK(eig.values.minCoeff() >= -1e-10 * std::max(1.0, eig.values.maxCoeff()));
        // Ascending order.
        for (Eigen::Index i = 1; i < eig.values.size(); ++i)
            CHECK(eig.values(i) >= eig.values(i - 1));
    }
}

TEST_CASE("pencil eigenvectors are eigencochains of the composed Laplacian") {
    OperatorSet ops(make_cycle(4), MassScheme::combinatorial);
    const EigenDecomposition& eig = ops.pencil(0);
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
        Cochain w;
        w.degree = 0;
        w.values = eig.vectors.col(j);
        VectorXd lw = ops.laplacian(w).values;
        CHECK((lw - eig.values(j) * w.values).norm() <= 1e-8 * (1.0 + eig.values(j)));
    }
}

TEST_CASE("operator set rejects mismatched input") {
    OperatorSet ops(make_triangle(), MassScheme::combinatorial);
    CHECK(ops.count(-1) == 0);
    CHECK(ops.count(5) == 0);
    CHECK_THROWS_AS(ops.space(3), InputError);
    CHECK_THROWS_AS(ops.d(cochain(0, {1, 2})), InputError);
    CHECK_THROWS_AS(ops.d(cochain(7, {1, 2, 3})), InputError);
}

TEST_CASE("mass corruption hook breaks adjointness") {
    // The corruption desynchronizes the degree-p mass from its cached factor,
    // so the mismatch surfaces in delta's solve: pairs at degrees (p, p+1).
    OperatorSet ops(make_octahedron(), MassScheme::combinatorial);
    ops.corrupt_mass(0, 1e-2);
    Rng rng(3);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Cochain a;
        a.degree = 0;
        a.values = rng.vector(ops.count(0));
        Cochain b;
        b.degree = 1;
        b.values = rng.vector(ops.count(1));
        double gap = std::abs(ops.inner(ops.d(a), b) - ops.inner(a, ops.delta(b)));
        worst = std::max(worst, gap / (a.values.norm() * b.values.norm()));
    }
    CHECK(worst > 1e-10);
    CHECK_THROWS_AS(ops.corrupt_mass(9, 1e-2), InputError);
}
