#include "hodgekit/green.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

namespace {

VectorXd project_out(const OperatorSet& ops, int p, const std::vector<Cochain>& dirs,
                     VectorXd v) {
    for (const Cochain& e : dirs) v -= ops.inner(p, v, e.values) * e.values;
    return v;
}

/// Spectral application of the Green operator to a vector already known to be
/// M-orthogonal to the kernel.
VectorXd green_apply_dense(const OperatorSet& ops, const HarmonicBasis& basis, int p,
                           const VectorXd& r) {
    const EigenDecomposition& eig = ops.pencil(p);
    const int m = basis.dimension();
    VectorXd out = VectorXd::Zero(r.size());
    for (Eigen::Index i = m; i < eig.values.size(); ++i) {
        double coeff = ops.inner(p, r, eig.vectors.col(i)) / eig.values(i);
        out += coeff * eig.vectors.col(i);
    }
    return out;
}

/// Deflated conjugate gradients on K x = M r, valid because M r is plain-
/// orthogonal to ker K exactly when r is M-orthogonal to the kernel.
VectorXd green_apply_iterative(const OperatorSet& ops, const HarmonicBasis& basis, int p,
                               const VectorXd& r) {
    const MatrixXd& k = ops.stiffness(p);
    const MatrixXd& m = ops.space(p).mass;
    auto apply = [&](const VectorXd& x) {
        return VectorXd(k * project_out(ops, p, basis.basis, x));
    };
    VectorXd rhs = m * r;
    std::size_t cap = 20 * static_cast<std::size_t>(std::max(1, ops.count(p))) + 100;
    CgResult sol = cg_solve(apply, rhs, ops.tolerances().lstsq_residual, cap);
    if (!sol.converged)
        throw NumericalError("green operator solve stalled at relative residual " +
                             std::to_string(sol.residual));
    return project_out(ops, p, basis.basis, sol.x);
}

VectorXd green_apply(const OperatorSet& ops, const HarmonicBasis& basis, int p,
                     const VectorXd& v) {
    VectorXd r = project_out(ops, p, basis.basis, v);
    if (ops.count(p) <= ops.tolerances().dense_limit)
        return green_apply_dense(ops, basis, p, r);
    return green_apply_iterative(ops, basis, p, r);
}

} // namespace

GreenSolve green(const OperatorSet& ops, const HarmonicBasis& basis, const Cochain& a) {
    const int p = a.degree;
    if (p != basis.degree) throw InputError("cochain degree does not match basis");

    GreenSolve out;
    out.input = a;
    out.harmonic = project_harmonic(ops, basis, a);
    out.output.degree = p;
    out.output.values = green_apply(ops, basis, p, a.values);

    VectorXd defect =
        ops.laplacian(out.output).values + out.harmonic.values - a.values;
    double scale = ops.norm(a);
    out.residual = scale > 0.0 ? ops.norm(p, defect) / scale : ops.norm(p, defect);
    return out;
}

Spectrum spectrum(const OperatorSet& ops, const HarmonicBasis& basis, int p, int k) {
    if (p != basis.degree) throw InputError("harmonic basis degree mismatch");
    const EigenDecomposition& eig = ops.pencil(p);
    const int m = basis.dimension();
    const int available = static_cast<int>(eig.values.size()) - m;
    if (k < 0) throw InputError("mode count must be nonnegative");
    if (k > available)
        throw InputError("requested " + std::to_string(k) + " modes, only " +
                         std::to_string(available) + " nonzero modes exist");

    Spectrum out;
    out.degree = p;
    out.harmonic_dim = m;
    out.grouping = ops.tolerances().eigenvalue_grouping;
    out.eigenvalues = eig.values.segment(m, k);
    out.modes.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        Cochain w;
        w.degree = p;
        w.values = eig.vectors.col(m + i);
        out.modes.push_back(std::move(w));
    }
    return out;
}

std::vector<std::pair<double, int>> group_eigenvalues(const VectorXd& ascending,
                                                      double rel_gap) {
    std::vector<std::pair<double, int>> groups;
    for (Eigen::Index i = 0; i < ascending.size(); ++i) {
        double v = ascending(i);
        if (!groups.empty()) {
            double rep = groups.back().first;
            double scale = std::max({std::abs(rep), std::abs(v), 1e-300});
            if (std::abs(v - rep) <= rel_gap * scale) {
                ++groups.back().second;
                continue;
            }
        }
        groups.emplace_back(v, 1);
    }
    return groups;
}

std::vector<VectorXd> complement_basis(const OperatorSet& ops, int p,
                                       const std::vector<Cochain>& excluded) {
    const int count = ops.count(p);
    std::vector<VectorXd> kept;
    const int want = count - static_cast<int>(excluded.size());
    if (want <= 0) return kept;
    kept.reserve(static_cast<std::size_t>(want));

    for (int i = 0; i < count && static_cast<int>(kept.size()) < want; ++i) {
        VectorXd v = VectorXd::Unit(count, i);
        v = project_out(ops, p, excluded, v);
        // Two MGS sweeps against the accepted columns keep M-orthogonality
        // near round-off.
        for (int sweep = 0; sweep < 2; ++sweep)
            for (const VectorXd& q : kept) v -= ops.inner(p, v, q) * q;
        double nrm = ops.norm(p, v);
        if (nrm < 1e-8) continue;
        kept.push_back(v / nrm);
    }
    if (static_cast<int>(kept.size()) != want)
        throw NumericalError("complement basis construction came up short");
    return kept;
}

double mu_variational(const OperatorSet& ops, const HarmonicBasis& basis,
                      const Spectrum& spec, int n) {
    const int p = basis.degree;
    if (n < 0 || n > static_cast<int>(spec.modes.size()))
        throw InputError("deflation count outside the computed spectrum");

    std::vector<Cochain> excluded = basis.basis;
    for (int i = 0; i < n; ++i) excluded.push_back(spec.modes[static_cast<std::size_t>(i)]);
    if (static_cast<int>(excluded.size()) >= ops.count(p))
        throw InputError("subspace exhausted: no room above the deflated modes");

    std::vector<VectorXd> q = complement_basis(ops, p, excluded);
    const int w = static_cast<int>(q.size());

    MatrixXd restricted(w, w);
    for (int j = 0; j < w; ++j) {
        VectorXd gq = green_apply(ops, basis, p, q[static_cast<std::size_t>(j)]);
        for (int i = 0; i < w; ++i)
            restricted(i, j) = ops.inner(p, q[static_cast<std::size_t>(i)], gq);
    }
    EigenDecomposition eig = sym_eig(restricted, ops.tolerances());
    return eig.values(eig.values.size() - 1);
}

Expansion expand(const OperatorSet& ops, const HarmonicBasis& basis, const Spectrum& spec,
                 const Cochain& a, int n) {
    const int p = a.degree;
    if (p != basis.degree || p != spec.degree) throw InputError("degree mismatch");
    const int m = basis.dimension();
    const int total = m + static_cast<int>(spec.modes.size());
    if (n < 0 || n > total)
        throw InputError("expansion order " + std::to_string(n) + " outside 0.." +
                         std::to_string(total));

    Expansion out;
    out.partial = ops.zero(p);
    for (int i = 0; i < std::min(n, m); ++i) {
        const Cochain& e = basis.basis[static_cast<std::size_t>(i)];
        out.partial.values += ops.inner(a, e) * e.values;
    }
    for (int i = m; i < n; ++i) {
        const Cochain& w = spec.modes[static_cast<std::size_t>(i - m)];
        out.partial.values += ops.inner(a, w) * w.values;
    }
    out.residual = ops.norm(p, a.values - out.partial.values);
    return out;
}

std::vector<ExpansionRow> expansion_trace(const OperatorSet& ops, const HarmonicBasis& basis,
                                          const Spectrum& spec, const Cochain& a) {
    const int m = basis.dimension();
    const int total = m + static_cast<int>(spec.modes.size());
    const double norm_a = ops.norm(a);
    const double norm_lap = ops.norm(ops.laplacian(a));
    const double slack = ops.tolerances().expansion_complete * norm_a;

    std::vector<ExpansionRow> rows;
    rows.reserve(static_cast<std::size_t>(total) + 1);
    for (int n = 0; n <= total; ++n) {
        ExpansionRow row;
        row.n = n;
        row.residual = expand(ops, basis, spec, a, n).residual;
        if (n < m) {
            row.bound = std::numeric_limits<double>::infinity();
        } else if (n < total) {
            row.bound = norm_lap / spec.eigenvalues(n - m) + slack;
        } else {
            row.bound = slack;
        }
        rows.push_back(row);
    }
    return rows;
}

CommutationReport check_commutation(const OperatorSet& ops,
                                    const std::vector<HarmonicBasis>& bases, int samples,
                                    Rng& rng) {
    if (static_cast<int>(bases.size()) != ops.dim() + 1)
        throw InputError("need one harmonic basis per degree");

    CommutationReport report;
    report.samples = samples;
    for (int s = 0; s < samples; ++s) {
        for (int p = 0; p <= ops.dim(); ++p) {
            Cochain a;
            a.degree = p;
            a.values = rng.vector(ops.count(p));
            double scale = ops.norm(a);
            if (scale <= 0.0) continue;
            const HarmonicBasis& bp = bases[static_cast<std::size_t>(p)];
            Cochain ga;
            ga.degree = p;
            ga.values = green_apply(ops, bp, p, a.values);

            if (p < ops.dim()) {
                const HarmonicBasis& bq = bases[static_cast<std::size_t>(p + 1)];
                Cochain da = ops.d(a);
                VectorXd lhs = green_apply(ops, bq, p + 1, da.values);
                VectorXd rhs = ops.d(ga).values;
                report.worst_d =
                    std::max(report.worst_d, ops.norm(p + 1, lhs - rhs) / scale);
            }
            if (p > 0) {
                const HarmonicBasis& bq = bases[static_cast<std::size_t>(p - 1)];
                Cochain dla = ops.delta(a);
                VectorXd lhs = green_apply(ops, bq, p - 1, dla.values);
                VectorXd rhs = ops.delta(ga).values;
                report.worst_delta =
                    std::max(report.worst_delta, ops.norm(p - 1, lhs - rhs) / scale);
            }
            {
                Cochain la = ops.laplacian(a);
                VectorXd lhs = green_apply(ops, bp, p, la.values);
                VectorXd rhs = ops.laplacian(ga).values;
                report.worst_laplacian =
                    std::max(report.worst_laplacian, ops.norm(p, lhs - rhs) / scale);
            }
        }
    }
    return report;
}

double coercivity_constant(const Spectrum& spec) {
    if (spec.eigenvalues.size() == 0)
        throw InputError("coercivity constant needs at least one nonzero eigenvalue");
    return 1.0 / spec.eigenvalues(0);
}

} // namespace hodgekit
