#pragma once

#include <string>
#include <vector>

#include "hodgekit/green.hpp"
#include "hodgekit/hodge.hpp"

namespace hodgekit {

/// {"degree": p, "values": [...]} with values in simplex-index order.
std::string cochain_to_json(const Cochain& a);

/// Parse and validate against the expected count for its degree. Throws
/// InputError on malformed JSON, missing keys, or length mismatch.
Cochain cochain_from_json(const std::string& text, const OperatorSet& ops);
Cochain cochain_from_json_file(const std::string& path, const OperatorSet& ops);

/// {"exact": [...], "coexact": [...], "harmonic": [...],
///  "residual": r, "orthogonality": o}
std::string hodge_split_to_json(const HodgeSplit& split);

/// {"degree": p, "harmonic_dim": m, "eigenvalues": [...], "residuals": [...]}
/// where residuals[j] = ||laplacian(w_j) - lambda_j w_j||_M.
std::string spectrum_to_json(const OperatorSet& ops, const Spectrum& spec);

/// "n,residual,bound" header plus one row per expansion order; infinities
/// print as "inf".
std::string expansion_to_csv(const std::vector<ExpansionRow>& rows);

} // namespace hodgekit
