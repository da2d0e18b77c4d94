#include "hodgekit/linsolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "hodgekit/exceptions.hpp"

namespace hodgekit {

namespace {

void require_symmetric(const MatrixXd& a, double rel_tol, const char* who) {
    if (a.rows() != a.cols()) {
        throw InputError(std::string(who) + ": matrix is not square");
    }
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > rel_tol * scale) {
        throw InputError(std::string(who) + ": matrix is asymmetric (deviation " +
                         std::to_string(asym / scale) + " relative)");
    }
}

} // namespace

VectorXd SymmetricFactor::solve(const VectorXd& b) const {
    VectorXd y = lower.triangularView<Eigen::Lower>().solve(b);
    return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

MatrixXd SymmetricFactor::solve(const MatrixXd& b) const {
    MatrixXd y = lower.triangularView<Eigen::Lower>().solve(b);
    return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

MatrixXd SymmetricFactor::reconstruct() const {
    return lower * lower.transpose();
}

SymmetricFactor cholesky(const MatrixXd& a, const Tolerances& tol) {
    require_symmetric(a, tol.generic_symmetry, "cholesky");
    const Eigen::Index n = a.rows();
    SymmetricFactor f;
    f.size = n;
    f.lower = MatrixXd::Zero(n, n);
    const double max_diag = n > 0 ? a.diagonal().cwiseAbs().maxCoeff() : 0.0;
    const double pivot_floor = static_cast<double>(n) * tol.cholesky_pivot * max_diag;

    for (Eigen::Index j = 0; j < n; ++j) {
        double s = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k) s -= f.lower(j, k) * f.lower(j, k);
        if (s <= pivot_floor) {
            f.failed = true;
            return f;
        }
        const double d = std::sqrt(s);
        f.lower(j, j) = d;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double t = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) t -= f.lower(i, k) * f.lower(j, k);
            f.lower(i, j) = t / d;
        }
    }
    return f;
}

EigenDecomposition sym_eig(const MatrixXd& a, const Tolerances& tol) {
    require_symmetric(a, tol.generic_symmetry, "sym_eig");
    // Work on the symmetrized copy so round-off asymmetry cannot leak through.
    MatrixXd s = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(s);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("sym_eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenDecomposition sym_eig_generalized(const MatrixXd& a, const MatrixXd& b,
                                       const Tolerances& tol) {
    SymmetricFactor f = cholesky(b, tol);
    if (f.failed) {
        throw NumericalError("sym_eig_generalized: right-hand matrix is not positive definite");
    }
    // C = L^-1 A L^-T, then map vectors back through L^-T; B-orthonormal by construction.
    MatrixXd half = f.lower.triangularView<Eigen::Lower>().solve(a);
    MatrixXd c = f.lower.triangularView<Eigen::Lower>().solve(half.transpose()).transpose();
    EigenDecomposition ord = sym_eig(c, tol);
    MatrixXd vectors = f.lower.transpose().triangularView<Eigen::Upper>().solve(ord.vectors);
    return {ord.values, vectors};
}

int rank_exact(const MatrixXi& b) {
    using boost::multiprecision::cpp_int;
    const Eigen::Index rows = b.rows(), cols = b.cols();
    if (rows == 0 || cols == 0) return 0;

    std::vector<std::vector<cpp_int>> m(static_cast<std::size_t>(rows),
                                        std::vector<cpp_int>(static_cast<std::size_t>(cols)));
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m[i][j] = b(i, j);

    // Bareiss fraction-free elimination; entries remain exact integers.
    int rank = 0;
    cpp_int prev_pivot = 1;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index pivot_row = -1;
        for (Eigen::Index i = row; i < rows; ++i) {
            if (m[i][col] != 0) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row < 0) continue;
        std::swap(m[row], m[pivot_row]);
        const cpp_int pivot = m[row][col];
        for (Eigen::Index i = row + 1; i < rows; ++i) {
            for (Eigen::Index j = col + 1; j < cols; ++j) {
                m[i][j] = (m[i][j] * pivot - m[i][col] * m[row][j]) / prev_pivot;
            }
            m[i][col] = 0;
        }
        prev_pivot = pivot;
        ++row;
        ++rank;
    }
    return rank;
}

RankEstimate rank_float(const MatrixXd& b, const Tolerances& tol) {
    RankEstimate out;
    if (b.rows() == 0 || b.cols() == 0) return out;
    Eigen::BDCSVD<MatrixXd> svd(b);
    const VectorXd& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
    if (smax == 0.0) return out;
    const double cutoff = static_cast<double>(std::max(b.rows(), b.cols())) *
                          std::numeric_limits<double>::epsilon() * smax;
    const double lo = cutoff / tol.rank_ambiguity_window;
    const double hi = cutoff * tol.rank_ambiguity_window;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff) ++out.rank;
        if (sigma(i) > lo && sigma(i) < hi) out.ambiguous = true;
    }
    return out;
}

CgResult cg_solve(const std::function<VectorXd(const VectorXd&)>& apply, const VectorXd& b,
                  double tol_rel, std::size_t cap) {
    CgResult out;
    const double bnorm = b.norm();
    out.x = VectorXd::Zero(b.size());
    if (bnorm == 0.0) {
        out.converged = true;
        return out;
    }
    VectorXd r = b;
    VectorXd p = r;
    double rr = r.squaredNorm();
    const double target = tol_rel * bnorm;
    for (std::size_t it = 0; it < cap; ++it) {
        if (std::sqrt(rr) <= target) break;
        VectorXd ap = apply(p);
        const double pap = p.dot(ap);
        if (pap <= 0.0) {
            // Operator not positive on this direction; report what we have.
            break;
        }
        const double alpha = rr / pap;
        out.x += alpha * p;
        r -= alpha * ap;
        const double rr_new = r.squaredNorm();
        p = r + (rr_new / rr) * p;
        rr = rr_new;
        ++out.iterations;
    }
    // Recompute the true residual; the recurrence can drift.
    out.residual = (b - apply(out.x)).norm() / bnorm;
    out.converged = out.residual <= tol_rel;
    return out;
}

} // namespace hodgekit
