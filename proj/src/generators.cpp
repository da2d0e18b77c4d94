#include "hodgekit/generators.hpp"

#include <cmath>

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

SimplicialComplex make_triangle() {
    std::vector<Eigen::Vector3d> pos = {
        {0.0, 0.0, 0.0},
        {1.0, 0.0, 0.0},
        {0.5, std::sqrt(3.0) / 2.0, 0.0},
    };
    return complex_from_cells(3, {{0, 1, 2}}, std::move(pos));
}

SimplicialComplex make_cycle(int n) {
    if (n < 3) throw InputError("cycle needs at least 3 vertices");
    std::vector<Eigen::Vector3d> pos;
    pos.reserve(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> cells;
    cells.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * M_PI * i / n;
        pos.emplace_back(std::cos(t), std::sin(t), 0.0);
        cells.push_back({i, (i + 1) % n});
    }
    return complex_from_cells(n, cells, std::move(pos));
}

SimplicialComplex make_octahedron() {
    std::vector<Eigen::Vector3d> pos = {
        {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
    };
    std::vector<std::vector<int>> cells = {
        {0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
        {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5},
    };
    return complex_from_cells(6, cells, std::move(pos));
}

SimplicialComplex make_torus_grid(int m, double major, double minor, double bump) {
    if (m < 3) throw InputError("torus grid needs at least 3 subdivisions per direction");
    if (!(minor > 0.0) || !(major > minor + bump))
        throw InputError("torus grid needs 0 < minor + bump < major");

    auto idx = [m](int i, int j) { return ((i % m + m) % m) * m + ((j % m + m) % m); };

    std::vector<Eigen::Vector3d> pos(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double u = 2.0 * M_PI * i / m;
            double v = 2.0 * M_PI * j / m;
            double r = minor + ((i + j) % 2 == 0 ? bump : -bump);
            pos[static_cast<std::size_t>(idx(i, j))] =
                Eigen::Vector3d((major + r * std::cos(v)) * std::cos(u),
                                (major + r * std::cos(v)) * std::sin(u),
                                r * std::sin(v));
        }
    }

    std::vector<std::vector<int>> cells;
    cells.reserve(static_cast<std::size_t>(2 * m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
            bool use_ac = true;
            if (bump > 0.0) {
                double ac = (pos[static_cast<std::size_t>(a)] - pos[static_cast<std::size_t>(c)]).norm();
                double bd = (pos[static_cast<std::size_t>(b)] - pos[static_cast<std::size_t>(d)]).norm();
                use_ac = ac <= bd;
            }
            if (use_ac) {
                cells.push_back({a, b, c});
                cells.push_back({a, c, d});
            } else {
                cells.push_back({a, b, d});
                cells.push_back({b, c, d});
            }
        }
    }
    return complex_from_cells(m * m, cells, std::move(pos));
}

SimplicialComplex make_torus_flat3() {
    const double radius = 1.0 / std::sqrt(3.0);
    const double lift = 0.1;
    auto idx = [](int i, int j) { return ((i % 3 + 3) % 3) * 3 + ((j % 3 + 3) % 3); };

    std::vector<Eigen::Vector3d> pos(9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double t = 2.0 * M_PI * ((i + j) % 3) / 3.0;
            pos[static_cast<std::size_t>(idx(i, j))] =
                Eigen::Vector3d(radius * std::cos(t), radius * std::sin(t), (i - 1) * lift);
        }
    }

    std::vector<std::vector<int>> cells;
    cells.reserve(18);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
            cells.push_back({a, b, c});
            cells.push_back({a, c, d});
        }
    }
    return complex_from_cells(9, cells, std::move(pos));
}

SimplicialComplex make_named_mesh(const std::string& name) {
    if (name == "triangle") return make_triangle();
    if (name == "c4") return make_cycle(4);
    if (name == "c12") return make_cycle(12);
    if (name == "octahedron") return make_octahedron();
    if (name == "torus3") return make_torus_flat3();
    if (name == "torus8") return make_torus_grid(8, 1.6, 1.0, 0.1);
    throw InputError("unknown mesh name: " + name);
}

std::vector<std::string> named_mesh_list() {
    return {"triangle", "c4", "c12", "octahedron", "torus3", "torus8"};
}

} // namespace hodgekit
