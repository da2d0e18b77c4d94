#include "hodgekit/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json values_array(const VectorXd& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string cochain_to_json(const Cochain& a) {
    ordered_json j;
    j["degree"] = a.degree;
    j["values"] = values_array(a.values);
    return j.dump(2) + "\n";
}

Cochain cochain_from_json(const std::string& text, const OperatorSet& ops) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("cochain JSON parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("degree") || !j.contains("values"))
        throw InputError("cochain JSON needs \"degree\" and \"values\"");
    if (!j["degree"].is_number_integer())
        throw InputError("cochain degree must be an integer");
    Cochain a;
    a.degree = j["degree"].get<int>();
    if (a.degree < 0 || a.degree > ops.dim())
        throw InputError("cochain degree " + std::to_string(a.degree) +
                         " not present in this complex");
    const auto& vals = j["values"];
    if (!vals.is_array()) throw InputError("cochain values must be an array");
    if (static_cast<int>(vals.size()) != ops.count(a.degree))
        throw InputError("cochain has " + std::to_string(vals.size()) + " values, degree " +
                         std::to_string(a.degree) + " needs " +
                         std::to_string(ops.count(a.degree)));
    a.values.resize(static_cast<Eigen::Index>(vals.size()));
    for (Eigen::Index i = 0; i < a.values.size(); ++i) {
        const auto& x = vals[static_cast<std::size_t>(i)];
        if (!x.is_number()) throw InputError("cochain values must be numbers");
        a.values(i) = x.get<double>();
    }
    return a;
}

Cochain cochain_from_json_file(const std::string& path, const OperatorSet& ops) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open cochain file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return cochain_from_json(buffer.str(), ops);
}

std::string hodge_split_to_json(const HodgeSplit& split) {
    ordered_json j;
    j["exact"] = values_array(split.exact.values);
    j["coexact"] = values_array(split.coexact.values);
    j["harmonic"] = values_array(split.harmonic.values);
    j["residual"] = split.residual;
    j["orthogonality"] = split.orthogonality;
    return j.dump(2) + "\n";
}

std::string spectrum_to_json(const OperatorSet& ops, const Spectrum& spec) {
    ordered_json j;
    j["degree"] = spec.degree;
    j["harmonic_dim"] = spec.harmonic_dim;
    j["eigenvalues"] = values_array(spec.eigenvalues);
    ordered_json residuals = ordered_json::array();
    for (std::size_t i = 0; i < spec.modes.size(); ++i) {
        const Cochain& w = spec.modes[i];
        VectorXd defect =
            ops.laplacian(w).values - spec.eigenvalues(static_cast<Eigen::Index>(i)) * w.values;
        residuals.push_back(ops.norm(spec.degree, defect));
    }
    j["residuals"] = residuals;
    return j.dump(2) + "\n";
}

std::string expansion_to_csv(const std::vector<ExpansionRow>& rows) {
    std::ostringstream out;
    out << "n,residual,bound\n";
    for (const ExpansionRow& row : rows)
        out << row.n << ',' << format_double(row.residual) << ',' << format_double(row.bound)
            << '\n';
    return out.str();
}

} // namespace hodgekit
