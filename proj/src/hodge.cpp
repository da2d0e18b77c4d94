#include "hodgekit/hodge.hpp"

#include <cmath>
#include <string>

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

HarmonicBasis harmonic_basis(const OperatorSet& ops, int p, double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw InputError("kernel threshold must lie in (0, 1)");
    const EigenDecomposition& eig = ops.pencil(p);
    const Eigen::Index n = eig.values.size();

    HarmonicBasis out;
    out.degree = p;
    out.threshold = threshold;
    if (n == 0) return out;

    const double lambda_max = eig.values.maxCoeff();
    const double cutoff = threshold * std::max(lambda_max, 0.0);

    Eigen::Index kernel_end = 0;
    while (kernel_end < n && eig.values(kernel_end) <= cutoff) ++kernel_end;

    if (kernel_end > 0 && kernel_end < n) {
        const double discarded_max = std::max(eig.values(kernel_end - 1), 0.0);
        const double retained_min = eig.values(kernel_end);
        if (discarded_max > 0.0 &&
            retained_min < ops.tolerances().kernel_gap_factor * discarded_max)
            throw KernelAmbiguityError(
                "no clear spectral gap at the kernel threshold: largest discarded " +
                std::to_string(discarded_max) + ", smallest retained " +
                std::to_string(retained_min));
    }

    out.basis.reserve(static_cast<std::size_t>(kernel_end));
    for (Eigen::Index i = 0; i < kernel_end; ++i) {
        Cochain e;
        e.degree = p;
        e.values = eig.vectors.col(i);
        out.basis.push_back(std::move(e));
    }
    return out;
}

HarmonicBasis harmonic_basis(const OperatorSet& ops, int p) {
    return harmonic_basis(ops, p, ops.tolerances().kernel_threshold);
}

Cochain project_harmonic(const OperatorSet& ops, const HarmonicBasis& basis,
                         const Cochain& a) {
    if (a.degree != basis.degree) throw InputError("cochain degree does not match basis");
    Cochain out = ops.zero(basis.degree);
    for (const Cochain& e : basis.basis) out.values += ops.inner(a, e) * e.values;
    return out;
}

namespace {

/// When a normal-equation right-hand side is pure cancellation noise (the
/// target is already orthogonal to the operator's range), its direction has
/// order-one components in the kernel and conjugate gradients cannot reduce
/// it. The zero potential is the least-squares answer in that regime.
constexpr double kLstsqNoiseFloor = 1e-12;

CgResult trivially_solved(Eigen::Index size) {
    CgResult out;
    out.x = VectorXd::Zero(size);
    out.converged = true;
    return out;
}

/// Least-squares potential beta minimizing ||d beta - target||_M, via
/// conjugate gradients on the normal equations D^T M D beta = D^T M target.
CgResult exact_potential(const OperatorSet& ops, int p, const VectorXd& target) {
    const MatrixXd& d = ops.coboundary(p - 1);
    const MatrixXd& m = ops.space(p).mass;
    VectorXd mt = m * target;
    VectorXd rhs = d.transpose() * mt;
    if (rhs.norm() <= kLstsqNoiseFloor * d.norm() * mt.norm())
        return trivially_solved(d.cols());
    auto apply = [&](const VectorXd& x) { return VectorXd(d.transpose() * (m * (d * x))); };
    std::size_t cap =
        static_cast<std::size_t>(ops.tolerances().lstsq_cap_factor) *
        static_cast<std::size_t>(std::max(1, ops.count(p - 1)));
    return cg_solve(apply, rhs, ops.tolerances().lstsq_residual, cap);
}

/// Least-squares potential gamma minimizing ||delta gamma - target||_M. The
/// normal equations d delta gamma = d target are M-self-adjoint; multiplying
/// through by M_{p+1} makes them plain-symmetric for conjugate gradients.
CgResult coexact_potential(const OperatorSet& ops, int p, const VectorXd& target) {
    const MatrixXd& d = ops.coboundary(p);
    const MatrixXd& m_up = ops.space(p + 1).mass;
    const CochainSpace& low = ops.space(p);
    VectorXd rhs = m_up * (d * target);
    if (rhs.norm() <= kLstsqNoiseFloor * m_up.norm() * d.norm() * target.norm())
        return trivially_solved(d.rows());
    auto apply = [&](const VectorXd& x) {
        VectorXd t = d.transpose() * (m_up * x);
        return VectorXd(m_up * (d * low.solve_mass(t)));
    };
    std::size_t cap =
        static_cast<std::size_t>(ops.tolerances().lstsq_cap_factor) *
        static_cast<std::size_t>(std::max(1, ops.count(p + 1)));
    return cg_solve(apply, rhs, ops.tolerances().lstsq_residual, cap);
}

} // namespace

HodgeSplit decompose(const OperatorSet& ops, const HarmonicBasis& basis, const Cochain& a) {
    const int p = a.degree;
    if (p != basis.degree) throw InputError("cochain degree does not match basis");
    const Tolerances& tol = ops.tolerances();
    const double scale = ops.norm(a);

    HodgeSplit split;
    split.harmonic = project_harmonic(ops, basis, a);
    VectorXd r = a.values - split.harmonic.values;

    split.exact = ops.zero(p);
    if (p > 0 && ops.count(p - 1) > 0) {
        CgResult sol = exact_potential(ops, p, r);
        if (!sol.converged)
            throw NumericalError("exact potential solve stalled at relative residual " +
                                 std::to_string(sol.residual));
        Cochain beta;
        beta.degree = p - 1;
        beta.values = sol.x;
        split.exact = ops.d(beta);
        split.exact_potential = std::move(beta);
    }

    split.coexact = ops.zero(p);
    split.coexact.values = r - split.exact.values;

    if (p < ops.dim() && ops.count(p + 1) > 0) {
        CgResult sol = coexact_potential(ops, p, split.coexact.values);
        if (!sol.converged)
            throw NumericalError("coexact certificate solve stalled at relative residual " +
                                 std::to_string(sol.residual));
        Cochain gamma;
        gamma.degree = p + 1;
        gamma.values = sol.x;
        double cert = ops.norm(p, ops.delta(gamma).values - split.coexact.values);
        if (cert > tol.hodge_reconstruction * scale + 1e-300)
            throw NumericalError("coexact part failed its membership certificate: " +
                                 std::to_string(cert));
        split.coexact_potential = std::move(gamma);
    }

    VectorXd recon =
        split.exact.values + split.coexact.values + split.harmonic.values - a.values;
    split.residual = scale > 0.0 ? ops.norm(p, recon) / scale : ops.norm(p, recon);

    double s2 = scale > 0.0 ? scale * scale : 1.0;
    double worst = std::abs(ops.inner(split.exact, split.coexact));
    worst = std::max(worst, std::abs(ops.inner(split.exact, split.harmonic)));
    worst = std::max(worst, std::abs(ops.inner(split.coexact, split.harmonic)));
    split.orthogonality = worst / s2;
    return split;
}

int betti(const SimplicialComplex& k, int p, const Tolerances& tol) {
    if (p < 0 || p > k.dim) return 0;

    auto boundary_rank = [&](int q) -> int {
        if (q < 1 || q > k.dim) return 0;
        MatrixXi b = boundary_matrix(k, q);
        if (b.rows() == 0 || b.cols() == 0) return 0;
        RankEstimate est = rank_float(b.cast<double>(), tol);
        if (est.ambiguous) return rank_exact(b);
        return est.rank;
    };

    return k.count(p) - boundary_rank(p) - boundary_rank(p + 1);
}

} // namespace hodgekit
