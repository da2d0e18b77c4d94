#include "hodgekit/off_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

namespace {

struct LineReader {
    explicit LineReader(std::string_view text) : text_(text) {}

    /// Next non-blank, non-comment line. Returns false at end of input.
    bool next(std::string& out) {
        while (pos_ < text_.size()) {
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_number_;
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string_view::npos || line[first] == '#') continue;
            std::size_t last = line.find_last_not_of(" \t\r");
            out.assign(line.substr(first, last - first + 1));
            return true;
        }
        return false;
    }

    int line_number() const { return line_number_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_number_ = 0;
};

[[noreturn]] void fail(const LineReader& r, const std::string& msg) {
    throw ParseError(r.line_number(), msg);
}

long parse_long(const std::string& token, const LineReader& r, const char* what) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(token, &used);
    } catch (const std::exception&) {
        fail(r, std::string("expected ") + what + ", got '" + token + "'");
    }
    if (used != token.size()) fail(r, std::string("trailing junk after ") + what);
    return value;
}

} // namespace

SimplicialComplex parse_off(std::string_view text) {
    LineReader reader(text);
    std::string line;

    if (!reader.next(line)) throw ParseError(1, "empty document, expected OFF header");
    bool tet_mode = false;
    if (line == "OFF") {
        tet_mode = false;
    } else if (line == "OFF TET") {
        tet_mode = true;
    } else {
        fail(reader, "malformed header '" + line + "', expected OFF or OFF TET");
    }

    if (!reader.next(line)) fail(reader, "missing counts line");
    long vertex_count = 0, face_count = 0, edge_count_unused = 0;
    {
        std::istringstream is(line);
        std::string a, b, c, extra;
        if (!(is >> a >> b >> c)) fail(reader, "counts line must read 'V F E'");
        if (is >> extra) fail(reader, "counts line has extra fields");
        vertex_count = parse_long(a, reader, "vertex count");
        face_count = parse_long(b, reader, "face count");
        edge_count_unused = parse_long(c, reader, "edge count");
        (void)edge_count_unused;
    }
    if (vertex_count < 1) fail(reader, "vertex count must be >= 1");
    if (face_count < 0) fail(reader, "face count must be >= 0");

    std::vector<Eigen::Vector3d> positions;
    positions.reserve(static_cast<std::size_t>(vertex_count));
    for (long v = 0; v < vertex_count; ++v) {
        if (!reader.next(line)) fail(reader, "unexpected end of file in vertex block");
        std::istringstream is(line);
        double x, y, z;
        if (!(is >> x >> y >> z)) fail(reader, "vertex line must hold three coordinates");
        std::string extra;
        if (is >> extra) fail(reader, "vertex line has extra fields");
        positions.emplace_back(x, y, z);
    }

    const int cell_arity = tet_mode ? 4 : 3;
    std::vector<std::vector<int>> cells;
    cells.reserve(static_cast<std::size_t>(face_count));
    for (long f = 0; f < face_count; ++f) {
        if (!reader.next(line)) fail(reader, "unexpected end of file in face block");
        std::istringstream is(line);
        long arity = 0;
        if (!(is >> arity)) fail(reader, "face line must start with its vertex count");
        if (arity != cell_arity)
            fail(reader, tet_mode
                             ? "expected tetrahedron line '4 i j k l', got arity " +
                                   std::to_string(arity)
                             : "non-triangle polygon with " + std::to_string(arity) +
                                   " vertices");
        std::vector<int> cell(static_cast<std::size_t>(cell_arity));
        for (int i = 0; i < cell_arity; ++i) {
            long v;
            if (!(is >> v)) fail(reader, "face line is short of vertex indices");
            if (v < 0 || v >= vertex_count)
                fail(reader, "vertex index " + std::to_string(v) + " out of range 0.." +
                                 std::to_string(vertex_count - 1));
            cell[static_cast<std::size_t>(i)] = static_cast<int>(v);
        }
        std::string extra;
        if (is >> extra) fail(reader, "face line has extra fields");
        std::vector<int> sorted = cell;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(reader, "repeated vertex inside a face");
        cells.push_back(std::move(cell));
    }

    // Extension A: an EDGES block turns a face-less file into a 1-complex.
    if (face_count == 0 && reader.next(line)) {
        std::istringstream is(line);
        std::string keyword;
        long edge_count = 0;
        if (!(is >> keyword)) fail(reader, "unreadable trailer line");
        if (keyword != "EDGES")
            fail(reader, "unexpected content after empty face block: '" + line + "'");
        if (!(is >> edge_count) || edge_count < 0) fail(reader, "EDGES needs a count");
        for (long e = 0; e < edge_count; ++e) {
            if (!reader.next(line)) fail(reader, "unexpected end of file in edge block");
            std::istringstream es(line);
            long i, j;
            if (!(es >> i >> j)) fail(reader, "edge line must hold two vertex indices");
            std::string extra;
            if (es >> extra) fail(reader, "edge line has extra fields");
            if (i < 0 || i >= vertex_count || j < 0 || j >= vertex_count)
                fail(reader, "vertex index out of range in edge line");
            if (i == j) fail(reader, "repeated vertex inside an edge");
            cells.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    }

    return complex_from_cells(static_cast<int>(vertex_count), cells, std::move(positions));
}

SimplicialComplex read_off_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open mesh file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_off(buffer.str());
}

std::string write_off(const SimplicialComplex& k) {
    std::ostringstream out;
    const int n = k.dim;
    const int vertex_count = k.count(0);
    const bool tet = n == 3;
    out << (tet ? "OFF TET\n" : "OFF\n");

    const int top_cells = n >= 2 ? k.count(n) : 0;
    out << vertex_count << ' ' << top_cells << " 0\n";

    char buf[96];
    for (int v = 0; v < vertex_count; ++v) {
        Eigen::Vector3d p = k.has_positions() ? k.positions[static_cast<std::size_t>(v)]
                                              : Eigen::Vector3d::Zero();
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x(), p.y(), p.z());
        out << buf;
    }
    if (n >= 2) {
        for (const auto& cell : k.simplices[n]) {
            out << cell.size();
            for (int v : cell) out << ' ' << v;
            out << '\n';
        }
    } else if (n == 1) {
        out << "EDGES " << k.count(1) << '\n';
        for (const auto& e : k.simplices[1]) out << e[0] << ' ' << e[1] << '\n';
    }
    return out.str();
}

void write_off_file(const SimplicialComplex& k, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + path);
    out << write_off(k);
}

} // namespace hodgekit
