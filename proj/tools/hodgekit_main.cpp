#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hodgekit/exceptions.hpp"
#include "hodgekit/generators.hpp"
#include "hodgekit/green.hpp"
#include "hodgekit/hodge.hpp"
#include "hodgekit/json_io.hpp"
#include "hodgekit/off_io.hpp"
#include "hodgekit/operators.hpp"
#include "hodgekit/rng.hpp"
#include "hodgekit/verify.hpp"

namespace {

using namespace hodgekit;
using ordered_json = nlohmann::ordered_json;

enum ExitCode {
    exit_ok = 0,
    exit_property = 1,
    exit_input = 2,
    exit_consistency = 3,
    exit_numerical = 4,
};

struct RunConfig {
    std::string mesh;
    std::string scheme_name = "combinatorial";
    std::vector<int> degrees;
    int modes = -1; // -1 = every nonzero eigenpair
    double threshold = default_tolerances().kernel_threshold;
    std::string out;
    std::uint64_t seed = 1;
    std::string cochain_path;
    std::string expand_csv;
    int samples = 40;
    bool text_report = false;
    double corrupt_amount = 0.0;
    int corrupt_degree = 0;
};

int thread_cap() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const char* env = std::getenv("HODGEKIT_THREADS");
    if (!env) return hw;
    int v = std::atoi(env);
    if (v < 1) v = 1;
    return std::min(v, hw);
}

/// Run work(slot) for every slot, concurrently when allowed. Slots keep
/// their identity so callers can merge results in a fixed order; the first
/// failing slot's exception is rethrown.
void parallel_slots(int nslots, const std::function<void(int)>& work) {
    int workers = std::min(thread_cap(), nslots);
    if (workers <= 1) {
        for (int i = 0; i < nslots; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nslots));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < nslots; i = next++) {
                try {
                    work(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

/// A mesh argument is either an OFF file path or a bundled generator name.
SimplicialComplex load_mesh(const std::string& spec) {
    if (std::filesystem::exists(spec)) return read_off_file(spec);
    for (const std::string& name : named_mesh_list())
        if (name == spec) return make_named_mesh(spec);
    throw InputError("mesh not found (no such file or bundled name): " + spec);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write output file: " + path);
    out << text;
}

std::vector<int> resolve_degrees(const OperatorSet& ops, std::vector<int> requested) {
    if (requested.empty()) {
        for (int p = 0; p <= ops.dim(); ++p) requested.push_back(p);
        return requested;
    }
    for (int p : requested)
        if (p < 0 || p > ops.dim())
            throw InputError("degree " + std::to_string(p) + " out of range 0.." +
                             std::to_string(ops.dim()));
    std::sort(requested.begin(), requested.end());
    requested.erase(std::unique(requested.begin(), requested.end()), requested.end());
    return requested;
}

int single_degree(const OperatorSet& ops, const RunConfig& cfg) {
    if (cfg.degrees.size() != 1)
        throw InputError("this command needs exactly one --degree");
    int p = cfg.degrees.front();
    if (p < 0 || p > ops.dim())
        throw InputError("degree " + std::to_string(p) + " out of range 0.." +
                         std::to_string(ops.dim()));
    return p;
}

Cochain load_or_random(const OperatorSet& ops, int p, const RunConfig& cfg) {
    if (!cfg.cochain_path.empty()) {
        Cochain a = cochain_from_json_file(cfg.cochain_path, ops);
        if (a.degree != p)
            throw InputError("cochain has degree " + std::to_string(a.degree) +
                             ", command asked for " + std::to_string(p));
        return a;
    }
    Rng rng(cfg.seed);
    Cochain a;
    a.degree = p;
    a.values = rng.vector(ops.count(p));
    return a;
}

ordered_json values_array(const VectorXd& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

int cmd_info(const RunConfig& cfg) {
    OperatorSet ops(load_mesh(cfg.mesh), mass_scheme_from_string(cfg.scheme_name));
    const int n = ops.dim();

    struct Row {
        int count = 0;
        int betti = 0;
        int harmonic = 0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(n) + 1);
    parallel_slots(n + 1, [&](int p) {
        Row& r = rows[static_cast<std::size_t>(p)];
        r.count = ops.count(p);
        r.betti = betti(ops.complex(), p, ops.tolerances());
        r.harmonic = harmonic_basis(ops, p, cfg.threshold).dimension();
    });

    bool agree = true;
    ordered_json degrees = ordered_json::array();
    for (int p = 0; p <= n; ++p) {
        const Row& r = rows[static_cast<std::size_t>(p)];
        bool same = r.betti == r.harmonic;
        agree = agree && same;
        ordered_json e;
        e["degree"] = p;
        e["count"] = r.count;
        e["betti"] = r.betti;
        e["harmonic_dim"] = r.harmonic;
        e["agree"] = same;
        degrees.push_back(e);
    }
    ordered_json j;
    j["mesh"] = cfg.mesh;
    j["scheme"] = to_string(ops.scheme());
    j["dim"] = n;
    j["degrees"] = degrees;
    j["agree"] = agree;
    emit(cfg.out, j.dump(2) + "\n");
    return agree ? exit_ok : exit_consistency;
}

int cmd_decompose(const RunConfig& cfg) {
    OperatorSet ops(load_mesh(cfg.mesh), mass_scheme_from_string(cfg.scheme_name));
    int p = single_degree(ops, cfg);
    Cochain a = load_or_random(ops, p, cfg);
    HarmonicBasis basis = harmonic_basis(ops, p, cfg.threshold);
    HodgeSplit split = decompose(ops, basis, a);
    emit(cfg.out, hodge_split_to_json(split));
    return split.residual <= ops.tolerances().hodge_reconstruction ? exit_ok
                                                                   : exit_property;
}

int cmd_spectrum(const RunConfig& cfg) {
    OperatorSet ops(load_mesh(cfg.mesh), mass_scheme_from_string(cfg.scheme_name));
    std::vector<int> degrees = resolve_degrees(ops, cfg.degrees);

    std::vector<ordered_json> slots(degrees.size());
    parallel_slots(static_cast<int>(degrees.size()), [&](int slot) {
        int p = degrees[static_cast<std::size_t>(slot)];
        HarmonicBasis basis = harmonic_basis(ops, p, cfg.threshold);
        int full = ops.count(p) - basis.dimension();
        int k = cfg.modes < 0 ? full : cfg.modes;
        Spectrum spec = spectrum(ops, basis, p, k);
        slots[static_cast<std::size_t>(slot)] =
            ordered_json::parse(spectrum_to_json(ops, spec));
    });

    ordered_json j;
    j["mesh"] = cfg.mesh;
    j["scheme"] = to_string(ops.scheme());
    ordered_json arr = ordered_json::array();
    for (const ordered_json& s : slots) arr.push_back(s);
    j["degrees"] = arr;
    emit(cfg.out, j.dump(2) + "\n");

    if (!cfg.expand_csv.empty()) {
        if (degrees.size() != 1)
            throw InputError("--expand-csv needs exactly one --degree");
        int p = degrees.front();
        HarmonicBasis basis = harmonic_basis(ops, p, cfg.threshold);
        Spectrum full = spectrum(ops, basis, p, ops.count(p) - basis.dimension());
        Cochain a = load_or_random(ops, p, cfg);
        auto rows = expansion_trace(ops, basis, full, a);
        emit(cfg.expand_csv, expansion_to_csv(rows));
        if (rows.back().residual >
            ops.tolerances().expansion_complete * ops.norm(a))
            return exit_property;
    }
    return exit_ok;
}

int cmd_green(const RunConfig& cfg) {
    OperatorSet ops(load_mesh(cfg.mesh), mass_scheme_from_string(cfg.scheme_name));
    int p = single_degree(ops, cfg);
    Cochain a = load_or_random(ops, p, cfg);
    HarmonicBasis basis = harmonic_basis(ops, p, cfg.threshold);
    GreenSolve g = green(ops, basis, a);
    ordered_json j;
    j["degree"] = p;
    j["input"] = values_array(g.input.values);
    j["output"] = values_array(g.output.values);
    j["harmonic"] = values_array(g.harmonic.values);
    j["residual"] = g.residual;
    emit(cfg.out, j.dump(2) + "\n");
    return g.residual <= ops.tolerances().green_residual ? exit_ok : exit_property;
}

int cmd_expand(const RunConfig& cfg) {
    OperatorSet ops(load_mesh(cfg.mesh), mass_scheme_from_string(cfg.scheme_name));
    int p = single_degree(ops, cfg);
    HarmonicBasis basis = harmonic_basis(ops, p, cfg.threshold);
    Spectrum spec = spectrum(ops, basis, p, ops.count(p) - basis.dimension());
    Cochain a = load_or_random(ops, p, cfg);
    auto rows = expansion_trace(ops, basis, spec, a);
    emit(cfg.out, expansion_to_csv(rows));
    return rows.back().residual <= ops.tolerances().expansion_complete * ops.norm(a)
               ? exit_ok
               : exit_property;
}

int cmd_verify(const RunConfig& cfg) {
    OperatorSet ops(load_mesh(cfg.mesh), mass_scheme_from_string(cfg.scheme_name));
    if (cfg.corrupt_amount != 0.0) ops.corrupt_mass(cfg.corrupt_degree, cfg.corrupt_amount);
    VerifyReport report = run_property_suite(ops, cfg.samples, cfg.seed);
    emit(cfg.out,
         cfg.text_report ? verify_report_to_text(report) : verify_report_to_json(report));
    return report.all_passed() ? exit_ok : exit_property;
}

int cmd_genmesh(const std::string& name, const std::string& out) {
    SimplicialComplex k = make_named_mesh(name);
    if (out.empty()) {
        std::cout << write_off(k);
        return exit_ok;
    }
    write_off_file(k, out);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete Hodge toolkit: d / delta / Laplacian / Green pipelines on "
                 "simplicial cochains"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string genmesh_name;
    std::string genmesh_out;

    auto add_common = [&](CLI::App* sub, bool with_degrees) {
        sub->add_option("--mesh", cfg.mesh,
                        "OFF file path or bundled mesh name (triangle, c4, c12, "
                        "octahedron, torus3, torus8)")
            ->required();
        sub->add_option("--scheme", cfg.scheme_name,
                        "mass scheme: combinatorial | lumped-barycentric | "
                        "lumped-circumcentric");
        sub->add_option("--threshold", cfg.threshold,
                        "relative eigenvalue cutoff for the harmonic kernel, in (0, 1)");
        sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
        if (with_degrees) sub->add_option("--degree", cfg.degrees, "degree(s) to process");
    };

    CLI::App* info = app.add_subcommand(
        "info", "simplex counts, Betti numbers and harmonic dimensions per degree");
    add_common(info, false);

    CLI::App* decompose = app.add_subcommand(
        "decompose", "orthogonal exact + coexact + harmonic split of a cochain");
    add_common(decompose, true);
    decompose->add_option("--cochain", cfg.cochain_path,
                          "cochain JSON file (random when omitted)");
    decompose->add_option("--seed", cfg.seed, "seed for the random cochain");

    CLI::App* spectrum_cmd = app.add_subcommand(
        "spectrum", "nonzero Laplacian eigenvalues and eigenpair residuals");
    add_common(spectrum_cmd, true);
    spectrum_cmd->add_option("--modes", cfg.modes, "eigenpairs per degree (default: all)")
        ->check(CLI::NonNegativeNumber);
    spectrum_cmd->add_option("--expand-csv", cfg.expand_csv,
                             "also write the expansion residual-vs-bound CSV here "
                             "(single degree only)");
    spectrum_cmd->add_option("--cochain", cfg.cochain_path,
                             "cochain JSON file for the expansion (random when omitted)");
    spectrum_cmd->add_option("--seed", cfg.seed, "seed for the random cochain");

    CLI::App* green_cmd =
        app.add_subcommand("green", "apply the Green operator to a cochain");
    add_common(green_cmd, true);
    green_cmd->add_option("--cochain", cfg.cochain_path,
                          "cochain JSON file (random when omitted)");
    green_cmd->add_option("--seed", cfg.seed, "seed for the random cochain");

    CLI::App* expand = app.add_subcommand(
        "expand", "expansion residual-vs-bound CSV over the full eigenbasis");
    add_common(expand, true);
    expand->add_option("--cochain", cfg.cochain_path,
                       "cochain JSON file (random when omitted)");
    expand->add_option("--seed", cfg.seed, "seed for the random cochain");

    CLI::App* verify = app.add_subcommand(
        "verify", "run the full property suite against this mesh and scheme");
    add_common(verify, false);
    verify->add_option("--samples", cfg.samples, "random cochains per sampled property")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "sampler seed");
    verify->add_flag("--text", cfg.text_report, "plain-text report instead of JSON");
    verify->add_option("--corrupt-mass", cfg.corrupt_amount)->group("");
    verify->add_option("--corrupt-degree", cfg.corrupt_degree)->group("");

    CLI::App* genmesh = app.add_subcommand("genmesh", "write a bundled mesh as OFF");
    genmesh->group("");
    genmesh->add_option("--name", genmesh_name, "bundled mesh name")->required();
    genmesh->add_option("--out", genmesh_out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (cfg.threshold <= 0.0 || cfg.threshold >= 1.0)
            throw InputError("--threshold must lie strictly between 0 and 1");
        if (app.got_subcommand(info)) return cmd_info(cfg);
        if (app.got_subcommand(decompose)) return cmd_decompose(cfg);
        if (app.got_subcommand(spectrum_cmd)) return cmd_spectrum(cfg);
        if (app.got_subcommand(green_cmd)) return cmd_green(cfg);
        if (app.got_subcommand(expand)) return cmd_expand(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg);
        if (app.got_subcommand(genmesh)) return cmd_genmesh(genmesh_name, genmesh_out);
        throw InputError("no subcommand");
    } catch (const KernelAmbiguityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_consistency;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}
