#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "hodgekit/exceptions.hpp"
#include "hodgekit/generators.hpp"
#include "hodgekit/off_io.hpp"
#include "hodgekit/simplicial_complex.hpp"

using namespace hodgekit;

namespace {

int parse_error_line(std::string_view text) {
    try {
        parse_off(text);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

std::string parse_error_message(std::string_view text) {
    try {
        parse_off(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

SimplicialComplex make_tetrahedron() {
    std::vector<Eigen::Vector3d> pos = {
        {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
    };
    return complex_from_cells(4, {{0, 1, 2, 3}}, std::move(pos));
}

} // namespace

TEST_CASE("triangle complex: counts, edge order, boundary signs") {
    SimplicialComplex k = make_triangle();
    CHECK(k.dim == 2);
    CHECK(k.count(0) == 3);
    CHECK(k.count(1) == 3);
    CHECK(k.count(2) == 1);
    CHECK(k.count(-1) == 0);
    CHECK(k.count(3) == 0);

    // Lexicographic edge order fixes the index layout.
    CHECK(k.simplices[1][0] == std::vector<int>{0, 1});
    CHECK(k.simplices[1][1] == std::vector<int>{0, 2});
    CHECK(k.simplices[1][2] == std::vector<int>{1, 2});

    Eigen::MatrixXi b2 = boundary_matrix(k, 2);
    REQUIRE(b2.rows() == 3);
    REQUIRE(b2.cols() == 1);
    CHECK(b2(0, 0) == 1);  // edge (0,1) enters with sign +1
    CHECK(b2(1, 0) == -1); // edge (0,2) enters with sign -1
    CHECK(b2(2, 0) == 1);  // edge (1,2) enters with sign +1

    Eigen::MatrixXi b1 = boundary_matrix(k, 1);
    REQUIRE(b1.rows() == 3);
    REQUIRE(b1.cols() == 3);
    // Column of edge (0,1): tail gets -1, head gets +1.
    CHECK(b1(0, 0) == -1);
    CHECK(b1(1, 0) == 1);
    CHECK(b1(2, 0) == 0);

    CHECK((b1 * b2).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("single edge boundary column") {
    SimplicialComplex k = complex_from_cells(2, {{0, 1}});
    CHECK(k.dim == 1);
    Eigen::MatrixXi b = boundary_matrix(k, 1);
    CHECK(b(0, 0) == -1);
    CHECK(b(1, 0) == 1);
}

TEST_CASE("generator census") {
    SimplicialComplex c4 = make_cycle(4);
    CHECK(c4.count(0) == 4);
    CHECK(c4.count(1) == 4);

    SimplicialComplex c12 = make_cycle(12);
    CHECK(c12.count(0) == 12);
    CHECK(c12.count(1) == 12);

    SimplicialComplex oct = make_octahedron();
    CHECK(oct.count(0) == 6);
    CHECK(oct.count(1) == 12);
    CHECK(oct.count(2) == 8);

    SimplicialComplex t3 = make_torus_flat3();
    CHECK(t3.count(0) == 9);
    CHECK(t3.count(1) == 27);
    CHECK(t3.count(2) == 18);

    SimplicialComplex t8 = make_named_mesh("torus8");
    CHECK(t8.count(0) == 64);
    CHECK(t8.count(1) == 192);
    CHECK(t8.count(2) == 128);

    CHECK_THROWS_AS(make_cycle(2), InputError);
    CHECK_THROWS_AS(make_named_mesh("no-such-mesh"), InputError);
    CHECK(named_mesh_list().size() == 6);
}

TEST_CASE("boundary of boundary vanishes exactly") {
    for (const char* name : {"octahedron", "torus3", "torus8"}) {
        SimplicialComplex k = make_named_mesh(name);
        Eigen::MatrixXi prod = boundary_matrix(k, 1) * boundary_matrix(k, 2);
        CHECK(prod.cwiseAbs().maxCoeff() == 0);
    }
    SimplicialComplex tet = make_tetrahedron();
    CHECK((boundary_matrix(tet, 1) * boundary_matrix(tet, 2)).cwiseAbs().maxCoeff() == 0);
    CHECK((boundary_matrix(tet, 2) * boundary_matrix(tet, 3)).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("boundary_matrix rejects out-of-range degrees") {
    SimplicialComplex k = make_triangle();
    CHECK_THROWS_AS(boundary_matrix(k, 0), InputError);
    CHECK_THROWS_AS(boundary_matrix(k, 3), InputError);
}

TEST_CASE("complex_from_cells normalizes winding and deduplicates") {
    SimplicialComplex a = complex_from_cells(3, {{0, 1, 2}});
    SimplicialComplex b = complex_from_cells(3, {{2, 1, 0}});
    SimplicialComplex c = complex_from_cells(3, {{0, 1, 2}, {1, 2, 0}});
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.count(2) == 1);

    CHECK_THROWS_AS(complex_from_cells(3, {{0, 1, 1}}), InputError);
    CHECK_THROWS_AS(complex_from_cells(3, {{0, 1, 3}}), InputError);
    CHECK_THROWS_AS(complex_from_cells(3, {{}}), InputError);
    CHECK_THROWS_AS(complex_from_cells(0, {}), InputError);
    CHECK_THROWS_AS(complex_from_cells(3, {{0, 1, 2}}, {{0, 0, 0}}), InputError);
}

TEST_CASE("isolated vertices are kept") {
    SimplicialComplex k = complex_from_cells(5, {{0, 1}});
    CHECK(k.count(0) == 5);
    CHECK(k.count(1) == 1);
}

TEST_CASE("validate accepts the bundled meshes") {
    for (const char* name : {"triangle", "c4", "c12", "octahedron", "torus3", "torus8"}) {
        ValidationReport report = validate(make_named_mesh(name));
        CHECK(report.ok);
        CHECK(report.violations.empty());
    }
    CHECK(validate(make_tetrahedron()).ok);
}

namespace {

bool has_violation(const ValidationReport& report, const std::string& kind) {
    for (const auto& v : report.violations)
        if (v.kind == kind) return true;
    return false;
}

} // namespace

TEST_CASE("validate flags a missing face") {
    SimplicialComplex k = make_triangle();
    k.simplices[1].pop_back();
    k.boundary[1].pop_back();
    ValidationReport report = validate(k);
    CHECK_FALSE(report.ok);
    CHECK(has_violation(report, "face absent"));
}

TEST_CASE("validate flags an unsorted simplex") {
    SimplicialComplex k = make_triangle();
    k.simplices[1][0] = {1, 0};
    ValidationReport report = validate(k);
    CHECK_FALSE(report.ok);
    CHECK(has_violation(report, "unsorted"));
}

TEST_CASE("validate flags a duplicated simplex") {
    SimplicialComplex k = make_triangle();
    k.simplices[1].push_back(k.simplices[1].back());
    k.boundary[1].push_back(k.boundary[1].back());
    ValidationReport report = validate(k);
    CHECK_FALSE(report.ok);
    CHECK(has_violation(report, "duplicate"));
}

TEST_CASE("validate flags a broken incidence sign") {
    SimplicialComplex k = make_octahedron();
    k.boundary[2][0][0].sign *= -1;
    ValidationReport report = validate(k);
    CHECK_FALSE(report.ok);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == "dd != 0");
}

TEST_CASE("validate flags an out-of-range face index") {
    SimplicialComplex k = make_triangle();
    k.boundary[2][0][0].face = 99;
    ValidationReport report = validate(k);
    CHECK_FALSE(report.ok);
    CHECK(has_violation(report, "bad incidence"));
}

TEST_CASE("OFF parse of a hand-written triangle") {
    const char* text =
        "# a lone triangle\n"
        "OFF\n"
        "3 1 0\n"
        "0 0 0\n"
        "1 0 0\n"
        "\n"
        "0.5 0.5 0\n"
        "3 0 2 1\n";
    SimplicialComplex k = parse_off(text);
    CHECK(k.dim == 2);
    CHECK(k.count(0) == 3);
    CHECK(k.count(1) == 3);
    CHECK(k.count(2) == 1);
    CHECK(k.positions[2].x() == 0.5);
}

TEST_CASE("OFF round-trip is byte-stable and bit-exact") {
    for (const char* name : {"triangle", "c4", "c12", "octahedron", "torus3", "torus8"}) {
        SimplicialComplex k = make_named_mesh(name);
        std::string once = write_off(k);
        SimplicialComplex back = parse_off(once);
        CHECK(back == k);
        CHECK(write_off(back) == once);
    }
}

TEST_CASE("OFF TET round-trip") {
    SimplicialComplex tet = make_tetrahedron();
    std::string text = write_off(tet);
    CHECK(text.rfind("OFF TET\n", 0) == 0);
    SimplicialComplex back = parse_off(text);
    CHECK(back == tet);
    CHECK(back.count(0) == 4);
    CHECK(back.count(1) == 6);
    CHECK(back.count(2) == 4);
    CHECK(back.count(3) == 1);
}

TEST_CASE("OFF TET rejects triangle rows") {
    const char* text =
        "OFF TET\n"
        "4 1 0\n"
        "0 0 0\n"
        "1 0 0\n"
        "0 1 0\n"
        "0 0 1\n"
        "3 0 1 2\n";
    CHECK(parse_error_line(text) == 7);
    CHECK(parse_error_message(text).find("expected tetrahedron") != std::string::npos);
}

TEST_CASE("EDGES block round-trip for 1-complexes") {
    SimplicialComplex c4 = make_cycle(4);
    std::string text = write_off(c4);
    CHECK(text.find("EDGES 4\n") != std::string::npos);
    SimplicialComplex back = parse_off(text);
    CHECK(back == c4);
}

TEST_CASE("parse errors report physical line numbers") {
    CHECK(parse_error_line("") == 1);
    CHECK(parse_error_message("").find("empty document") != std::string::npos);

    CHECK(parse_error_line("XOFF\n1 0 0\n0 0 0\n") == 1);
    CHECK(parse_error_message("XOFF\n").find("malformed header") != std::string::npos);

    CHECK(parse_error_line("OFF\n3 1\n") == 2);
    CHECK(parse_error_line("OFF\n3 1 0 7\n") == 2);
    CHECK(parse_error_line("OFF\nthree 1 0\n") == 2);
    CHECK(parse_error_line("OFF\n0 0 0\n") == 2);

    // Bad vertex line; the comment above it still counts toward the position.
    CHECK(parse_error_line("OFF\n1 0 0\n# note\nnot a vertex\n") == 4);
    CHECK(parse_error_line("OFF\n2 0 0\n0 0 0\n1 2 3 4\n") == 4);

    const char* quad =
        "OFF\n"
        "4 1 0\n"
        "0 0 0\n"
        "1 0 0\n"
        "1 1 0\n"
        "0 1 0\n"
        "4 0 1 2 3\n";
    CHECK(parse_error_line(quad) == 7);
    CHECK(parse_error_message(quad).find("non-triangle polygon") != std::string::npos);

    const char* out_of_range =
        "OFF\n"
        "3 1 0\n"
        "0 0 0\n"
        "1 0 0\n"
        "0 1 0\n"
        "3 0 1 5\n";
    CHECK(parse_error_line(out_of_range) == 6);
    CHECK(parse_error_message(out_of_range).find("out of range") != std::string::npos);

    const char* repeated =
        "OFF\n"
        "3 1 0\n"
        "0 0 0\n"
        "1 0 0\n"
        "0 1 0\n"
        "3 0 1 1\n";
    CHECK(parse_error_line(repeated) == 6);
    CHECK(parse_error_message(repeated).find("repeated vertex") != std::string::npos);

    CHECK(parse_error_line("OFF\n1 1 0\n0 0 0\n") == 3);

    const char* bad_trailer =
        "OFF\n"
        "2 0 0\n"
        "0 0 0\n"
        "1 0 0\n"
        "FACES 1\n";
    CHECK(parse_error_line(bad_trailer) == 5);

    const char* degenerate_edge =
        "OFF\n"
        "2 0 0\n"
        "0 0 0\n"
        "1 0 0\n"
        "EDGES 1\n"
        "1 1\n";
    CHECK(parse_error_line(degenerate_edge) == 6);
}

TEST_CASE("ParseError is an InputError and keeps the line in the message") {
    try {
        parse_off("XOFF\n");
        FAIL("expected a throw");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).rfind("line 1:", 0) == 0);
    }
}

TEST_CASE("read_off_file and write_off_file") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "hodgekit_test_mesh.off";
    SimplicialComplex k = make_octahedron();
    write_off_file(k, path.string());
    SimplicialComplex back = read_off_file(path.string());
    CHECK(back == k);
    std::remove(path.string().c_str());

    CHECK_THROWS_AS(read_off_file("/no/such/file.off"), InputError);
}
