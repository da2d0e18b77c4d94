#include "hodgekit/simplicial_complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

namespace {

std::string tuple_str(const std::vector<int>& s) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ")";
    return os.str();
}

} // namespace

bool SimplicialComplex::operator==(const SimplicialComplex& other) const {
    if (dim != other.dim || simplices != other.simplices) return false;
    if (positions.size() != other.positions.size()) return false;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        // Bitwise equality: serialization must round-trip exactly.
        if (positions[i].x() != other.positions[i].x() ||
            positions[i].y() != other.positions[i].y() ||
            positions[i].z() != other.positions[i].z())
            return false;
    }
    if (boundary.size() != other.boundary.size()) return false;
    for (std::size_t p = 0; p < boundary.size(); ++p) {
        if (boundary[p].size() != other.boundary[p].size()) return false;
        for (std::size_t k = 0; k < boundary[p].size(); ++k) {
            const auto& a = boundary[p][k];
            const auto& b = other.boundary[p][k];
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i].face != b[i].face || a[i].sign != b[i].sign) return false;
        }
    }
    return true;
}

SimplicialComplex complex_from_cells(int vertex_count,
                                     const std::vector<std::vector<int>>& cells,
                                     std::vector<Eigen::Vector3d> positions) {
    if (vertex_count < 1) throw InputError("complex_from_cells: vertex count must be >= 1");
    if (!positions.empty() && static_cast<int>(positions.size()) != vertex_count)
        throw InputError("complex_from_cells: positions size does not match vertex count");

    int dim = 0;
    for (const auto& c : cells) {
        if (c.empty()) throw InputError("complex_from_cells: empty cell");
        dim = std::max(dim, static_cast<int>(c.size()) - 1);
    }

    SimplicialComplex k;
    k.dim = dim;
    k.positions = std::move(positions);
    k.simplices.resize(dim + 1);
    k.boundary.resize(dim + 1);

    // Collect every face of every cell, canonically sorted.
    std::vector<std::map<std::vector<int>, int>> index(dim + 1);
    for (int v = 0; v < vertex_count; ++v) index[0][{v}] = 0;

    std::vector<std::vector<int>> stack(cells.begin(), cells.end());
    for (auto& cell : stack) {
        std::sort(cell.begin(), cell.end());
        if (std::adjacent_find(cell.begin(), cell.end()) != cell.end())
            throw InputError("complex_from_cells: repeated vertex in cell " + tuple_str(cell));
        for (int v : cell) {
            if (v < 0 || v >= vertex_count)
                throw InputError("complex_from_cells: vertex index out of range in cell " +
                                 tuple_str(cell));
        }
    }
    while (!stack.empty()) {
        std::vector<int> s = std::move(stack.back());
        stack.pop_back();
        const int p = static_cast<int>(s.size()) - 1;
        if (!index[p].emplace(s, 0).second) continue; // already seen
        for (std::size_t i = 0; p >= 1 && i < s.size(); ++i) {
            std::vector<int> face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            stack.push_back(std::move(face));
        }
    }

    // std::map iterates lexicographically, which fixes the index order.
    for (int p = 0; p <= dim; ++p) {
        k.simplices[p].reserve(index[p].size());
        int id = 0;
        for (auto& [tuple, slot] : index[p]) {
            slot = id++;
            k.simplices[p].push_back(tuple);
        }
    }

    for (int p = 1; p <= dim; ++p) {
        k.boundary[p].resize(k.simplices[p].size());
        for (std::size_t j = 0; j < k.simplices[p].size(); ++j) {
            const auto& s = k.simplices[p][j];
            auto& entries = k.boundary[p][j];
            entries.reserve(s.size());
            int sign = 1;
            for (std::size_t i = 0; i < s.size(); ++i, sign = -sign) {
                std::vector<int> face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                entries.push_back({index[p - 1].at(face), sign});
            }
        }
    }
    return k;
}

Eigen::MatrixXi boundary_matrix(const SimplicialComplex& k, int p) {
    if (p < 1 || p > k.dim)
        throw InputError("boundary_matrix: degree " + std::to_string(p) + " outside 1.." +
                         std::to_string(k.dim));
    Eigen::MatrixXi b = Eigen::MatrixXi::Zero(k.count(p - 1), k.count(p));
    for (int j = 0; j < k.count(p); ++j)
        for (const auto& e : k.boundary[p][static_cast<std::size_t>(j)]) b(e.face, j) += e.sign;
    return b;
}

Eigen::MatrixXd boundary_matrix_real(const SimplicialComplex& k, int p) {
    return boundary_matrix(k, p).cast<double>();
}

ValidationReport validate(const SimplicialComplex& k) {
    ValidationReport report;
    auto add = [&report](const std::string& kind, const std::string& detail) {
        report.ok = false;
        report.violations.push_back({kind, detail});
    };

    if (static_cast<int>(k.simplices.size()) != k.dim + 1) {
        add("bad incidence", "simplices[] has wrong number of degrees");
        return report;
    }

    // Sortedness, strict increase, dedup.
    for (int p = 0; p <= k.dim; ++p) {
        const auto& list = k.simplices[p];
        for (std::size_t j = 0; j < list.size(); ++j) {
            const auto& s = list[j];
            if (static_cast<int>(s.size()) != p + 1)
                add("bad incidence", "degree " + std::to_string(p) + " simplex " + tuple_str(s) +
                                         " has wrong arity");
            if (!std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end())
                add("unsorted", "simplex " + tuple_str(s) + " is not strictly increasing");
            if (j > 0 && !(list[j - 1] < s))
                add("duplicate", "degree " + std::to_string(p) + " list not sorted/unique at " +
                                     tuple_str(s));
        }
    }

    // Face closure.
    for (int p = 1; p <= k.dim; ++p) {
        for (const auto& s : k.simplices[p]) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<int> face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                if (!std::binary_search(k.simplices[p - 1].begin(), k.simplices[p - 1].end(),
                                        face))
                    add("face absent", "face " + tuple_str(face) + " of " + tuple_str(s) +
                                           " missing from degree " + std::to_string(p - 1));
            }
        }
    }

    // Incidence indices in range.
    if (static_cast<int>(k.boundary.size()) != k.dim + 1) {
        add("bad incidence", "boundary[] has wrong number of degrees");
        return report;
    }
    for (int p = 1; p <= k.dim; ++p) {
        if (k.boundary[p].size() != k.simplices[p].size()) {
            add("bad incidence", "boundary[" + std::to_string(p) + "] size mismatch");
            continue;
        }
        for (const auto& entries : k.boundary[p])
            for (const auto& e : entries)
                if (e.face < 0 || e.face >= k.count(p - 1))
                    add("bad incidence", "face index out of range at degree " + std::to_string(p));
    }
    if (!report.ok) return report;

    // Integer identity: boundary of boundary vanishes.
    for (int p = 2; p <= k.dim; ++p) {
        Eigen::MatrixXi prod = boundary_matrix(k, p - 1) * boundary_matrix(k, p);
        if (prod.cwiseAbs().maxCoeff() != 0)
            add("dd != 0", "composite incidence nonzero between degrees " + std::to_string(p) +
                               " and " + std::to_string(p - 2));
    }
    return report;
}

} // namespace hodgekit
