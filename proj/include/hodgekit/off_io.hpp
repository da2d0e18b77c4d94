#pragma once

#include <string>
#include <string_view>

#include "hodgekit/simplicial_complex.hpp"

namespace hodgekit {

/// Parse an OFF document.
///
/// Accepted layout: an "OFF" header line, a "V F E" counts line, V coordinate
/// lines, then F polygon lines "3 i j k". Two extensions:
///   - a header of "OFF TET" switches polygon lines to "4 i j k l" tetrahedra;
///   - a file with F == 0 may carry an "EDGES m" block of "i j" pairs, which
///     defines a 1-complex.
/// Blank lines and '#' comments are skipped. Input winding is discarded; the
/// complex comes out canonically oriented. Throws ParseError with the
/// offending line number.
SimplicialComplex parse_off(std::string_view text);

/// Read and parse a file. Throws InputError when the file cannot be opened.
SimplicialComplex read_off_file(const std::string& path);

/// Serialize in the dialect parse_off reads, byte-stably: simplices in their
/// canonical sorted order and coordinates at 17 significant digits, so
/// parse(write(parse(text))) reproduces the complex exactly.
std::string write_off(const SimplicialComplex& k);

void write_off_file(const SimplicialComplex& k, const std::string& path);

} // namespace hodgekit
