#include "hodgekit/operators.hpp"

#include <string>

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

OperatorSet::OperatorSet(SimplicialComplex complex, MassScheme scheme, Tolerances tol)
    : complex_(std::move(complex)), scheme_(scheme), tol_(tol) {
    const int n = dim();

    spaces_.reserve(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) spaces_.push_back(mass_matrix(complex_, p, scheme_, tol_));

    coboundary_.reserve(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p)
        coboundary_.push_back(boundary_matrix_real(complex_, p + 1).transpose());

    stiffness_.reserve(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) {
        const int m = count(p);
        MatrixXd k = MatrixXd::Zero(m, m);
        if (p < n) {
            const MatrixXd& dp = coboundary_[static_cast<std::size_t>(p)];
            k += dp.transpose() * spaces_[static_cast<std::size_t>(p + 1)].mass * dp;
        }
        if (p > 0) {
            const MatrixXd& dm = coboundary_[static_cast<std::size_t>(p - 1)];
            // M_p D_{p-1} M_{p-1}^{-1} D_{p-1}^T M_p
            MatrixXd rhs = dm.transpose() * spaces_[static_cast<std::size_t>(p)].mass;
            MatrixXd solved = spaces_[static_cast<std::size_t>(p - 1)].mass_factor.solve(rhs);
            k += spaces_[static_cast<std::size_t>(p)].mass * dm * solved;
        }
        double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
        if ((k - k.transpose()).cwiseAbs().maxCoeff() > tol_.stiffness_symmetry * scale)
            throw NumericalError("stiffness assembly lost symmetry at degree " +
                                 std::to_string(p));
        stiffness_.push_back(0.5 * (k + k.transpose()));
    }

    pencils_.reserve(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) pencils_.push_back(std::make_unique<PencilCache>());
}

void OperatorSet::check_degree(int p) const {
    if (p < 0 || p > dim())
        throw InputError("degree " + std::to_string(p) + " out of range 0.." +
                         std::to_string(dim()));
}

const CochainSpace& OperatorSet::space(int p) const {
    check_degree(p);
    return spaces_[static_cast<std::size_t>(p)];
}

const MatrixXd& OperatorSet::coboundary(int p) const {
    if (p < 0 || p >= dim())
        throw InputError("coboundary degree " + std::to_string(p) + " out of range 0.." +
                         std::to_string(dim() - 1));
    return coboundary_[static_cast<std::size_t>(p)];
}

const MatrixXd& OperatorSet::stiffness(int p) const {
    check_degree(p);
    return stiffness_[static_cast<std::size_t>(p)];
}

Cochain OperatorSet::zero(int p) const {
    Cochain c;
    c.degree = p;
    c.values = VectorXd::Zero(count(p));
    return c;
}

Cochain OperatorSet::d(const Cochain& a) const {
    check_degree(a.degree);
    if (a.values.size() != count(a.degree)) throw InputError("cochain length mismatch");
    if (a.degree == dim()) return zero(dim() + 1);
    Cochain out;
    out.degree = a.degree + 1;
    out.values = coboundary_[static_cast<std::size_t>(a.degree)] * a.values;
    return out;
}

Cochain OperatorSet::delta(const Cochain& a) const {
    check_degree(a.degree);
    if (a.values.size() != count(a.degree)) throw InputError("cochain length mismatch");
    if (a.degree == 0) return zero(-1);
    const int p = a.degree;
    const MatrixXd& dm = coboundary_[static_cast<std::size_t>(p - 1)];
    VectorXd rhs = dm.transpose() * (spaces_[static_cast<std::size_t>(p)].mass * a.values);
    Cochain out;
    out.degree = p - 1;
    out.values = spaces_[static_cast<std::size_t>(p - 1)].solve_mass(rhs);
    return out;
}

Cochain OperatorSet::laplacian(const Cochain& a) const {
    check_degree(a.degree);
    Cochain out = zero(a.degree);
    if (a.degree < dim()) {
        Cochain up = delta(d(a));
        out.values += up.values;
    }
    if (a.degree > 0) {
        Cochain down = d(delta(a));
        out.values += down.values;
    }
    return out;
}

VectorXd OperatorSet::laplacian_apply(int p, const VectorXd& x) const {
    check_degree(p);
    if (x.size() != count(p)) throw InputError("cochain length mismatch");
    return spaces_[static_cast<std::size_t>(p)].solve_mass(
        stiffness_[static_cast<std::size_t>(p)] * x);
}

double OperatorSet::inner(int p, const VectorXd& a, const VectorXd& b) const {
    check_degree(p);
    if (a.size() != count(p) || b.size() != count(p))
        throw InputError("cochain length mismatch");
    return a.dot(spaces_[static_cast<std::size_t>(p)].mass * b);
}

double OperatorSet::inner(const Cochain& a, const Cochain& b) const {
    if (a.degree != b.degree) throw InputError("cochain degrees differ");
    return inner(a.degree, a.values, b.values);
}

double OperatorSet::norm(int p, const VectorXd& a) const {
    return std::sqrt(std::max(0.0, inner(p, a, a)));
}

double OperatorSet::norm(const Cochain& a) const { return norm(a.degree, a.values); }

void OperatorSet::corrupt_mass(int p, double amount) {
    check_degree(p);
    CochainSpace& s = spaces_[static_cast<std::size_t>(p)];
    if (s.count == 0) throw InputError("cannot corrupt an empty degree");
    if (s.count >= 2) {
        s.mass(0, 1) += amount;
        s.mass(1, 0) += amount;
    } else {
        s.mass(0, 0) += amount;
    }
}

const EigenDecomposition& OperatorSet::pencil(int p) const {
    check_degree(p);
    PencilCache& cache = *pencils_[static_cast<std::size_t>(p)];
    std::call_once(cache.once, [&] {
        cache.eig = sym_eig_generalized(stiffness_[static_cast<std::size_t>(p)],
                                        spaces_[static_cast<std::size_t>(p)].mass, tol_);
    });
    return cache.eig;
}

} // namespace hodgekit
