#include "hodgekit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

namespace {

double rel_asymmetry(const MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

double orthonormality_defect(const OperatorSet& ops,
                             const std::vector<Cochain>& vecs) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = i; j < vecs.size(); ++j) {
            double want = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(ops.inner(vecs[i], vecs[j]) - want));
        }
    return worst;
}

struct CheckDecl {
    const char* name;
    const char* statement;
    double limit;
};

} // namespace

VerifyReport run_property_suite(const OperatorSet& ops, int samples, std::uint64_t seed) {
    if (samples < 1) throw InputError("property suite needs at least one sample");
    const Tolerances& tol = ops.tolerances();
    const int n = ops.dim();
    Rng rng(seed);
    VerifyReport rep;

    // A property block that throws is a property that failed to verify: it is
    // recorded with an infinite worst value instead of aborting the suite, so
    // injected faults surface as failed checks.
    auto guarded = [&](std::initializer_list<CheckDecl> decls,
                       const std::function<void(std::vector<double>&)>& body) {
        std::vector<double> worst(decls.size(), 0.0);
        try {
            body(worst);
        } catch (const std::exception&) {
            std::fill(worst.begin(), worst.end(),
                      std::numeric_limits<double>::infinity());
        }
        std::size_t i = 0;
        for (const CheckDecl& d : decls) {
            rep.checks.push_back({d.name, d.statement, worst[i], d.limit,
                                  worst[i] <= d.limit});
            ++i;
        }
    };
    auto random_cochain = [&](int p) {
        Cochain a;
        a.degree = p;
        a.values = rng.vector(ops.count(p));
        return a;
    };

    // Shared per-degree machinery. A throw here is a failure of the suite
    // itself, which the caller surfaces as a numerical failure.
    std::vector<HarmonicBasis> bases;
    std::vector<Spectrum> spectra;
    std::vector<double> lam_max(static_cast<std::size_t>(n) + 1, 0.0);
    for (int p = 0; p <= n; ++p) {
        bases.push_back(harmonic_basis(ops, p));
        int full = ops.count(p) - bases.back().dimension();
        spectra.push_back(spectrum(ops, bases.back(), p, full));
        const VectorXd& ev = ops.pencil(p).values;
        lam_max[static_cast<std::size_t>(p)] = ev.size() > 0 ? ev.maxCoeff() : 0.0;
    }

    // --- complex structure ---
    guarded({{"boundary-squared", "composite signed incidence vanishes exactly", 0.0}},
            [&](std::vector<double>& w) {
                for (int p = 2; p <= n; ++p) {
                    MatrixXi dd = boundary_matrix(ops.complex(), p - 1) *
                                  boundary_matrix(ops.complex(), p);
                    if (dd.size() > 0)
                        w[0] = std::max(w[0],
                                        static_cast<double>(dd.cwiseAbs().maxCoeff()));
                }
            });
    guarded({{"complex-validation", "face closure, ordering, incidence ranges", 0.0}},
            [&](std::vector<double>& w) {
                w[0] = static_cast<double>(validate(ops.complex()).violations.size());
            });
    guarded({{"coboundary-squared", "d(d(a)) = 0 in floating point", tol.dd_zero}},
            [&](std::vector<double>& w) {
                for (int p = 0; p + 1 < n; ++p)
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        double scale = ops.norm(a);
                        if (scale <= 0.0) continue;
                        w[0] = std::max(w[0], ops.norm(ops.d(ops.d(a))) / scale);
                    }
            });

    // --- mass matrices ---
    guarded({{"mass-symmetry", "mass matrices symmetric", tol.mass_symmetry}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p)
                    w[0] = std::max(w[0], rel_asymmetry(ops.space(p).mass));
            });
    guarded({{"mass-positive-definite", "mass factorization succeeds", 0.0}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p)
                    if (ops.space(p).mass_factor.failed) w[0] = 1.0;
            });
    guarded({{"mass-factor-reconstruction", "L L^T rebuilds the mass matrix", 1e-12}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const CochainSpace& s = ops.space(p);
                    if (s.count == 0) continue;
                    double scale = std::max(1e-300, s.mass.cwiseAbs().maxCoeff());
                    w[0] = std::max(w[0], (s.mass_factor.reconstruct() - s.mass)
                                                  .cwiseAbs()
                                                  .maxCoeff() /
                                              scale);
                }
            });

    // --- adjointness and Laplacian structure ---
    guarded({{"adjointness", "<d a, b> = <a, delta b>", tol.adjointness}},
            [&](std::vector<double>& w) {
                for (int p = 0; p < n; ++p)
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        Cochain b = random_cochain(p + 1);
                        double scale = ops.norm(a) * ops.norm(b);
                        if (scale <= 0.0) continue;
                        double lhs = ops.inner(ops.d(a), b);
                        double rhs = ops.inner(a, ops.delta(b));
                        w[0] = std::max(w[0], std::abs(lhs - rhs) / scale);
                    }
            });
    guarded({{"stiffness-symmetry", "stiffness arrays symmetric", tol.stiffness_symmetry}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p)
                    w[0] = std::max(w[0], rel_asymmetry(ops.stiffness(p)));
            });
    guarded({{"laplacian-positive", "<laplacian(a), a> >= 0", tol.psd_slack}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p)
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        double na2 = ops.inner(a, a);
                        if (na2 <= 0.0) continue;
                        w[0] = std::max(w[0], -ops.inner(ops.laplacian(a), a) / na2);
                    }
            });
    guarded({{"laplacian-self-adjoint", "<laplacian(a), b> = <a, laplacian(b)>",
              tol.self_adjointness}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    double op_scale = std::max(1.0, lam_max[static_cast<std::size_t>(p)]);
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        Cochain b = random_cochain(p);
                        double scale = ops.norm(a) * ops.norm(b) * op_scale;
                        if (scale <= 0.0) continue;
                        double lhs = ops.inner(ops.laplacian(a), b);
                        double rhs = ops.inner(a, ops.laplacian(b));
                        w[0] = std::max(w[0], std::abs(lhs - rhs) / scale);
                    }
                }
            });
    guarded({{"laplacian-assembled-consistency",
              "composed delta d + d delta matches the assembled arrays",
              tol.operator_consistency}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    double op_scale = std::max(1.0, lam_max[static_cast<std::size_t>(p)]);
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        double scale = ops.norm(a) * op_scale;
                        if (scale <= 0.0) continue;
                        VectorXd assembled = ops.laplacian_apply(p, a.values);
                        w[0] = std::max(
                            w[0], ops.norm(p, ops.laplacian(a).values - assembled) / scale);
                    }
                }
            });
    guarded({{"laplacian-commutes-d", "d laplacian = laplacian d",
              tol.operator_consistency},
             {"laplacian-commutes-delta", "delta laplacian = laplacian delta",
              tol.operator_consistency}},
            [&](std::vector<double>& w) {
                for (int s = 0; s < samples; ++s) {
                    for (int p = 0; p < n; ++p) {
                        Cochain a = random_cochain(p);
                        Cochain lhs = ops.d(ops.laplacian(a));
                        Cochain rhs = ops.laplacian(ops.d(a));
                        double scale = ops.norm(lhs) + ops.norm(rhs) + ops.norm(a);
                        w[0] = std::max(w[0],
                                        ops.norm(p + 1, lhs.values - rhs.values) / scale);
                    }
                    for (int p = 1; p <= n; ++p) {
                        Cochain a = random_cochain(p);
                        Cochain lhs = ops.delta(ops.laplacian(a));
                        Cochain rhs = ops.laplacian(ops.delta(a));
                        double scale = ops.norm(lhs) + ops.norm(rhs) + ops.norm(a);
                        w[1] = std::max(w[1],
                                        ops.norm(p - 1, lhs.values - rhs.values) / scale);
                    }
                }
            });
    guarded({{"kernel-characterization",
              "harmonic cochains are simultaneously closed and coclosed",
              tol.kernel_threshold}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    double lm = std::max(lam_max[static_cast<std::size_t>(p)], 1e-300);
                    for (const Cochain& e : bases[static_cast<std::size_t>(p)].basis) {
                        double du = p < n ? ops.inner(ops.d(e), ops.d(e)) : 0.0;
                        double dl = p > 0 ? ops.inner(ops.delta(e), ops.delta(e)) : 0.0;
                        w[0] = std::max(w[0], (du + dl) / lm);
                    }
                }
            });

    // --- harmonic subspace and decomposition ---
    guarded({{"harmonic-orthonormal", "harmonic basis M-orthonormal", 1e-10}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p)
                    w[0] = std::max(w[0], orthonormality_defect(
                                              ops, bases[static_cast<std::size_t>(p)].basis));
            });
    guarded({{"harmonic-dimension-betti",
              "spectral kernel dimension equals the rank-oracle Betti number", 0.0}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p)
                    w[0] = std::max(
                        w[0], std::abs(static_cast<double>(
                                  bases[static_cast<std::size_t>(p)].dimension() -
                                  betti(ops.complex(), p, tol))));
            });
    guarded({{"projector-idempotent", "H(H(a)) = H(a)", 1e-10},
             {"projector-inner-preserving", "<H(a), e> = <a, e> on the harmonic basis",
              1e-10}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        double scale = ops.norm(a);
                        if (scale <= 0.0) continue;
                        Cochain h = project_harmonic(ops, basis, a);
                        Cochain hh = project_harmonic(ops, basis, h);
                        w[0] = std::max(w[0], ops.norm(p, hh.values - h.values) / scale);
                        for (const Cochain& e : basis.basis)
                            w[1] = std::max(w[1], std::abs(ops.inner(h, e) -
                                                           ops.inner(a, e)) /
                                                      scale);
                    }
                }
            });
    guarded({{"hodge-orthogonality", "split components pairwise M-orthogonal",
              tol.hodge_orthogonality},
             {"hodge-reconstruction", "exact + coexact + harmonic rebuilds the input",
              tol.hodge_reconstruction}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p)
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        if (ops.norm(a) <= 0.0) continue;
                        HodgeSplit split =
                            decompose(ops, bases[static_cast<std::size_t>(p)], a);
                        w[0] = std::max(w[0], split.orthogonality);
                        w[1] = std::max(w[1], split.residual);
                    }
            });
    guarded({{"hodge-uniqueness",
              "components are gauge-invariant: shifting by d(b) moves only the exact part",
              tol.hodge_uniqueness}},
            [&](std::vector<double>& w) {
                for (int p = 1; p <= n; ++p) {
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    for (int s = 0; s < std::max(1, samples / 4); ++s) {
                        Cochain a = random_cochain(p);
                        Cochain b0 = random_cochain(p - 1);
                        Cochain shift = ops.d(b0);
                        Cochain a2;
                        a2.degree = p;
                        a2.values = a.values + shift.values;
                        double scale = ops.norm(a) + ops.norm(shift);
                        if (scale <= 0.0) continue;
                        HodgeSplit s1 = decompose(ops, basis, a);
                        HodgeSplit s2 = decompose(ops, basis, a2);
                        w[0] = std::max(
                            w[0], ops.norm(p, s2.coexact.values - s1.coexact.values) / scale);
                        w[0] = std::max(
                            w[0],
                            ops.norm(p, s2.harmonic.values - s1.harmonic.values) / scale);
                        w[0] = std::max(
                            w[0], ops.norm(p, s2.exact.values -
                                                  (s1.exact.values + shift.values)) /
                                      scale);
                    }
                }
            });
    guarded({{"closed-orthogonal-coexact",
              "closed cochains are M-orthogonal to every coexact cochain", 1e-9}},
            [&](std::vector<double>& w) {
                for (int p = 0; p < n; ++p) {
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    for (int s = 0; s < samples; ++s) {
                        Cochain closed = ops.zero(p);
                        if (p > 0) closed = ops.d(random_cochain(p - 1));
                        for (const Cochain& e : basis.basis)
                            closed.values += rng.uniform() * e.values;
                        Cochain g = random_cochain(p + 1);
                        Cochain dg = ops.delta(g);
                        double scale = ops.norm(closed) * ops.norm(dg);
                        if (scale <= 0.0) continue;
                        w[0] = std::max(w[0], std::abs(ops.inner(closed, dg)) / scale);
                    }
                }
            });
    guarded({{"laplacian-range-orthogonal-harmonic",
              "laplacian images are M-orthogonal to the harmonic subspace", 1e-9}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    if (basis.dimension() == 0) continue;
                    double op_scale = std::max(1.0, lam_max[static_cast<std::size_t>(p)]);
                    for (int s = 0; s < samples; ++s) {
                        Cochain v = random_cochain(p);
                        double scale = ops.norm(v) * op_scale;
                        if (scale <= 0.0) continue;
                        Cochain lv = ops.laplacian(v);
                        for (const Cochain& e : basis.basis)
                            w[0] = std::max(w[0], std::abs(ops.inner(lv, e)) / scale);
                    }
                }
            });

    // --- Green operator ---
    guarded({{"green-defining", "laplacian(G a) + H(a) = a", tol.green_residual},
             {"green-harmonic-orthogonal",
              "G a is M-orthogonal to the harmonic subspace", tol.green_orthogonality}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        if (ops.norm(a) <= 0.0) continue;
                        GreenSolve g = green(ops, basis, a);
                        w[0] = std::max(w[0], g.residual);
                        double gn = ops.norm(g.output);
                        if (gn > 0.0)
                            for (const Cochain& e : basis.basis)
                                w[1] = std::max(w[1],
                                                std::abs(ops.inner(g.output, e)) / gn);
                    }
                }
            });
    guarded({{"green-self-adjoint", "<G a, b> = <a, G b>", tol.green_self_adjointness},
             {"green-positive", "<G a, a> >= 0", tol.green_positivity_slack}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    for (int s = 0; s < samples; ++s) {
                        Cochain a = random_cochain(p);
                        Cochain b = random_cochain(p);
                        double na = ops.norm(a), nb = ops.norm(b);
                        if (na <= 0.0 || nb <= 0.0) continue;
                        GreenSolve ga = green(ops, basis, a);
                        GreenSolve gb = green(ops, basis, b);
                        w[0] = std::max(w[0], std::abs(ops.inner(ga.output, b) -
                                                       ops.inner(a, gb.output)) /
                                                  (na * nb));
                        w[1] = std::max(w[1], -ops.inner(ga.output, a) / (na * na));
                    }
                }
            });
    guarded({{"green-vanishing-iff-harmonic",
              "<G a, a> vanishes exactly when a is harmonic", 1.0}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    for (int s = 0; s < samples; ++s) {
                        Cochain a;
                        bool force_harmonic = basis.dimension() > 0 && s % 2 == 0;
                        if (force_harmonic) {
                            a = ops.zero(p);
                            for (const Cochain& e : basis.basis)
                                a.values += rng.uniform() * e.values;
                        } else {
                            a = random_cochain(p);
                        }
                        double na = ops.norm(a);
                        if (na <= 0.0) continue;
                        GreenSolve g = green(ops, basis, a);
                        double quad = ops.inner(g.output, a) / (na * na);
                        double nonharmonic =
                            ops.norm(p, a.values - g.harmonic.values) / na;
                        if (quad <= tol.green_vanishing &&
                            nonharmonic > tol.harmonic_closeness)
                            w[0] = std::max(w[0], nonharmonic / tol.harmonic_closeness);
                        if (nonharmonic <= tol.harmonic_closeness &&
                            quad > tol.green_vanishing)
                            w[0] = std::max(w[0], quad / tol.green_vanishing);
                    }
                }
            });

    // --- spectrum ---
    guarded({{"spectrum-residuals", "laplacian(w) = lambda w per eigenpair",
              tol.eigen_pair_residual}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const Spectrum& spec = spectra[static_cast<std::size_t>(p)];
                    double lm = std::max(lam_max[static_cast<std::size_t>(p)], 1e-300);
                    for (std::size_t i = 0; i < spec.modes.size(); ++i) {
                        const Cochain& mode = spec.modes[i];
                        VectorXd defect =
                            ops.laplacian(mode).values -
                            spec.eigenvalues(static_cast<Eigen::Index>(i)) * mode.values;
                        w[0] = std::max(w[0],
                                        ops.norm(p, defect) / (lm * ops.norm(mode)));
                    }
                }
            });
    guarded({{"spectrum-orthonormal", "eigencochains M-orthonormal",
              tol.eigen_orthonormal}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p)
                    w[0] = std::max(w[0],
                                    orthonormality_defect(
                                        ops, spectra[static_cast<std::size_t>(p)].modes));
            });
    guarded({{"spectrum-nonnegative", "eigenvalues nonnegative", tol.eigen_nonnegative}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const VectorXd& ev = ops.pencil(p).values;
                    if (ev.size() == 0) continue;
                    double lm = std::max(lam_max[static_cast<std::size_t>(p)], 1e-300);
                    w[0] = std::max(w[0], -ev.minCoeff() / lm);
                }
            });
    guarded({{"cross-eigenvalue-orthogonality",
              "eigencochains of distinct eigenvalues are M-orthogonal, multiplicities fit",
              1e-9}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const Spectrum& spec = spectra[static_cast<std::size_t>(p)];
                    auto groups = group_eigenvalues(spec.eigenvalues, spec.grouping);
                    std::vector<std::pair<std::size_t, std::size_t>> ranges;
                    std::size_t start = 0;
                    for (const auto& g : groups) {
                        w[0] = std::max(w[0],
                                        static_cast<double>(g.second - ops.count(p)));
                        ranges.emplace_back(start,
                                            start + static_cast<std::size_t>(g.second));
                        start += static_cast<std::size_t>(g.second);
                    }
                    for (std::size_t gi = 0; gi < ranges.size(); ++gi)
                        for (std::size_t gj = gi + 1; gj < ranges.size(); ++gj)
                            for (std::size_t i = ranges[gi].first; i < ranges[gi].second;
                                 ++i)
                                for (std::size_t j = ranges[gj].first;
                                     j < ranges[gj].second; ++j)
                                    w[0] = std::max(
                                        w[0], std::abs(ops.inner(spec.modes[i],
                                                                 spec.modes[j])));
                }
            });
    guarded({{"reciprocal-spectra",
              "the spectrum of G on the harmonic complement is the reciprocal spectrum",
              tol.reciprocal_spectra}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const Spectrum& spec = spectra[static_cast<std::size_t>(p)];
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    if (spec.eigenvalues.size() == 0) continue;
                    std::vector<VectorXd> q = complement_basis(ops, p, basis.basis);
                    const int width = static_cast<int>(q.size());
                    MatrixXd restricted(width, width);
                    for (int j = 0; j < width; ++j) {
                        Cochain qc;
                        qc.degree = p;
                        qc.values = q[static_cast<std::size_t>(j)];
                        GreenSolve g = green(ops, basis, qc);
                        for (int i = 0; i < width; ++i)
                            restricted(i, j) = ops.inner(p, q[static_cast<std::size_t>(i)],
                                                         g.output.values);
                    }
                    EigenDecomposition eig = sym_eig(restricted, tol);
                    // Ascending eigenvalues of the restriction against
                    // descending reciprocals of the pencil's nonzero part.
                    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
                        double expected =
                            1.0 / spec.eigenvalues(spec.eigenvalues.size() - 1 - i);
                        w[0] = std::max(w[0], std::abs(eig.values(i) - expected) /
                                                  std::abs(expected));
                    }
                }
            });
    guarded({{"mu-variational",
              "restricted operator norm of G equals the next reciprocal eigenvalue, "
              "nonincreasing",
              tol.mu_variational}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const Spectrum& spec = spectra[static_cast<std::size_t>(p)];
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    const int modes = static_cast<int>(spec.modes.size());
                    if (modes == 0) continue;
                    double prev = 0.0;
                    const int upto = std::min(modes - 1, 3);
                    for (int nn = 0; nn <= upto; ++nn) {
                        double mu = mu_variational(ops, basis, spec, nn);
                        double expected = 1.0 / spec.eigenvalues(nn);
                        w[0] = std::max(w[0], std::abs(mu - expected) / expected);
                        if (nn > 0)
                            w[0] = std::max(w[0], (mu - prev) / std::max(prev, 1e-300));
                        prev = mu;
                    }
                }
            });
    guarded({{"expansion-monotone", "partial-sum residual nonincreasing in n", 1e-12},
             {"expansion-bound", "residual within the eigenvalue tail bound", 0.0},
             {"expansion-complete", "full expansion reproduces the input",
              tol.expansion_complete}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const Spectrum& spec = spectra[static_cast<std::size_t>(p)];
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    for (int s = 0; s < std::max(1, samples / 10); ++s) {
                        Cochain a = random_cochain(p);
                        double na = ops.norm(a);
                        if (na <= 0.0) continue;
                        auto rows = expansion_trace(ops, basis, spec, a);
                        for (std::size_t i = 0; i < rows.size(); ++i) {
                            if (i > 0)
                                w[0] = std::max(w[0], (rows[i].residual -
                                                       rows[i - 1].residual) /
                                                          na);
                            if (std::isfinite(rows[i].bound))
                                w[1] = std::max(
                                    w[1], (rows[i].residual - rows[i].bound) / na);
                        }
                        w[2] = std::max(w[2], rows.back().residual / na);
                    }
                }
            });
    guarded({{"green-commutation", "G commutes with d, delta and the laplacian",
              tol.commutation}},
            [&](std::vector<double>& w) {
                CommutationReport c =
                    check_commutation(ops, bases, std::max(1, samples / 4), rng);
                w[0] = std::max({c.worst_d, c.worst_delta, c.worst_laplacian});
            });
    guarded({{"coercivity",
              "norm(g) <= k norm(laplacian(g)) off the harmonic subspace, sharp at the "
              "first mode",
              tol.coercivity}},
            [&](std::vector<double>& w) {
                for (int p = 0; p <= n; ++p) {
                    const Spectrum& spec = spectra[static_cast<std::size_t>(p)];
                    const HarmonicBasis& basis = bases[static_cast<std::size_t>(p)];
                    if (spec.eigenvalues.size() == 0) continue;
                    double k = coercivity_constant(spec);
                    for (int s = 0; s < samples; ++s) {
                        Cochain g = random_cochain(p);
                        g.values -= project_harmonic(ops, basis, g).values;
                        double ng = ops.norm(g);
                        if (ng <= 1e-12) continue;
                        double nl = ops.norm(ops.laplacian(g));
                        w[0] = std::max(w[0], ng / (k * nl) - 1.0);
                    }
                    const Cochain& w1 = spec.modes.front();
                    double sharp =
                        std::abs(ops.norm(w1) / (k * ops.norm(ops.laplacian(w1))) - 1.0);
                    w[0] = std::max(w[0], sharp);
                }
            });

    return rep;
}

std::string verify_report_to_json(const VerifyReport& report) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const PropertyCheck& c : report.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["statement"] = c.statement;
        if (std::isfinite(c.worst))
            e["worst"] = c.worst;
        else
            e["worst"] = "inf";
        e["limit"] = c.limit;
        e["passed"] = c.passed;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["all_passed"] = report.all_passed();
    return j.dump(2) + "\n";
}

std::string verify_report_to_text(const VerifyReport& report) {
    std::ostringstream out;
    for (const PropertyCheck& c : report.checks) {
        out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  worst " << c.worst
            << "  limit " << c.limit << "  (" << c.statement << ")\n";
    }
    out << (report.all_passed() ? "all properties hold" : "PROPERTY FAILURES PRESENT")
        << "\n";
    return out.str();
}

} // namespace hodgekit
